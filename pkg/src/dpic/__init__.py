"""Secure decentralized pliable index coding over LPS-FO side-information.

Build an instance, generate the recursive XOR transmission schedule, simulate
per-client decoding, and verify the exact-target security contract.
"""

from .decoder import (
    DecodeTrace,
    decode_trace,
    initial_knowledge,
    peel,
    simulate_payloads,
    span_decodable,
)
from .instance import (
    Instance,
    ParameterError,
    SegmentError,
    SideInfoInterval,
    build_instance,
    r_max,
    validate_lpsfo,
)
from .scheduler import (
    LevelContext,
    Schedule,
    SchedulingError,
    Transmission,
    build_schedule,
    is_special_case,
    predicted_count,
    recursion_chain,
    schedule_base,
    schedule_general_case,
    schedule_special_case,
)
from .verifier import (
    CheckResult,
    VerificationReport,
    optimality_gap,
    verify,
    verify_counts,
    verify_level_isolation,
    verify_mutation_sensitivity,
    verify_security,
    verify_structure_preservation,
)

__all__ = [
    "DecodeTrace",
    "Instance",
    "LevelContext",
    "ParameterError",
    "Schedule",
    "SchedulingError",
    "SegmentError",
    "SideInfoInterval",
    "Transmission",
    "CheckResult",
    "VerificationReport",
    "build_instance",
    "build_schedule",
    "decode_trace",
    "initial_knowledge",
    "is_special_case",
    "optimality_gap",
    "peel",
    "predicted_count",
    "r_max",
    "recursion_chain",
    "schedule_base",
    "schedule_general_case",
    "schedule_special_case",
    "simulate_payloads",
    "span_decodable",
    "validate_lpsfo",
    "verify",
    "verify_counts",
    "verify_level_isolation",
    "verify_mutation_sensitivity",
    "verify_security",
    "verify_structure_preservation",
]

__version__ = "0.1.0"
