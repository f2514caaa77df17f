"""Machine-checkable verification of the scheme's guarantees.

Every claim is an executable predicate over (instance, schedule, decoding
results): exact-target security, the transmission-count recurrence,
per-level isolation, LPS-FO structure preservation at each level, and the
optimality gap against the lower bound.  Security is checked against the
span oracle, not merely the peeling decoder, so a pass rules out any linear
combination attack.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .decoder import initial_knowledge, span_decodable
from .instance import Instance, validate_lpsfo
from .scheduler import (
    BASE1,
    BASE2,
    LevelContext,
    Schedule,
    expected_phase_counts,
    predicted_count,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)


@dataclass
class VerificationReport:
    regime: str
    optimality_gap: int
    checks: list[CheckResult]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def verify_security(instance: Instance, schedule: Schedule) -> CheckResult:
    """Every client must end with exactly the target number of messages:
    no fewer (completeness) and no more (security).
    """
    totals = {}
    for client in range(1, instance.clients + 1):
        decodable = span_decodable(instance, schedule, client)
        totals[client] = len(initial_knowledge(instance, client) | decodable)
    offenders = {
        c: n for c, n in totals.items() if n != instance.target
    }
    return CheckResult(
        name="security",
        passed=not offenders,
        details={
            "target": instance.target,
            "totals": totals,
            "offenders": offenders,
        },
    )


def verify_counts(instance: Instance, schedule: Schedule) -> CheckResult:
    """Total must match the count recurrence; each level and phase must emit
    exactly its formula's worth of transmissions (base levels emit 3 and 1).
    """
    expected_total = predicted_count(instance.clients)
    problems = []
    actual = {}
    for tx in schedule.transmissions:
        actual.setdefault(tx.level, {}).setdefault(tx.phase, 0)
        actual[tx.level][tx.phase] += 1
    for ctx in schedule.levels:
        expected = {
            phase: n for phase, n in expected_phase_counts(ctx).items() if n
        }
        got = actual.get(ctx.level, {})
        if got != expected:
            problems.append(
                {"level": ctx.level, "expected": expected, "actual": got}
            )
        level_expected = 3 if ctx.case == BASE2 else 1 if ctx.case == BASE1 else ctx.clients
        if sum(got.values()) != level_expected:
            problems.append(
                {
                    "level": ctx.level,
                    "expected_total": level_expected,
                    "actual_total": sum(got.values()),
                }
            )
    if len(schedule.transmissions) != expected_total:
        problems.append(
            {
                "expected_total": expected_total,
                "actual_total": len(schedule.transmissions),
            }
        )
    return CheckResult(
        name="counts",
        passed=not problems,
        details={"predicted": expected_total, "problems": problems},
    )


def _expected_level_gain(ctx: LevelContext, client: int) -> int:
    position = client - ctx.offset
    if 1 <= position <= ctx.group_size:
        return ctx.clients - (position - 1)
    return 0


def verify_level_isolation(instance: Instance, schedule: Schedule) -> CheckResult:
    """Feeding only one level's transmissions to the span oracle with each
    client's original side-information, clients beyond the level's served
    group must decode nothing, and client at group position i must decode
    exactly (remaining clients) - (i - 1) messages.
    """
    violations = []
    for ctx in schedule.levels:
        level_tx = [t for t in schedule.transmissions if t.level == ctx.level]
        for client in range(1, instance.clients + 1):
            decoded = span_decodable(
                instance, schedule, client, transmissions=level_tx
            )
            expected = _expected_level_gain(ctx, client)
            if len(decoded) != expected:
                violations.append(
                    {
                        "level": ctx.level,
                        "client": client,
                        "expected": expected,
                        "decoded": sorted(decoded),
                    }
                )
    return CheckResult(
        name="isolation",
        passed=not violations,
        details={"violations": violations},
    )


def verify_structure_preservation(
    instance: Instance, schedule: Schedule
) -> CheckResult:
    """At every visited level the residual clients' original intervals must
    still form a valid LPS-FO family with the level's first-client size.
    """
    failures = []
    for ctx in schedule.levels:
        intervals = [
            instance.side_info(ctx.offset + i) for i in range(1, ctx.clients + 1)
        ]
        if not validate_lpsfo(intervals, ctx.base_size, instance.overlap):
            failures.append(ctx.level)
    return CheckResult(
        name="structure",
        passed=not failures,
        details={"failing_levels": failures},
    )


def optimality_gap(clients: int) -> int:
    """Transmissions spent beyond the lower bound (the price of security)."""
    if clients < 2:
        raise ValueError(f"gap defined for at least 2 clients, got {clients}")
    lower_bound = clients if clients >= 3 else 3
    return predicted_count(clients) - lower_bound


def verify_mutation_sensitivity(
    instance: Instance, schedule: Schedule
) -> CheckResult:
    """Supplementary check (not claimed by the source scheme): deleting any
    single transmission must leave some client below the target, i.e. no
    transmission is redundant.
    """
    redundant = []
    txs = schedule.transmissions
    for skip in range(len(txs)):
        truncated = txs[:skip] + txs[skip + 1 :]
        hurt = False
        for client in range(1, instance.clients + 1):
            decodable = span_decodable(
                instance, schedule, client, transmissions=truncated
            )
            total = len(initial_knowledge(instance, client) | decodable)
            if total < instance.target:
                hurt = True
                break
        if not hurt:
            redundant.append(skip)
    return CheckResult(
        name="mutation-sensitivity",
        passed=not redundant,
        details={"redundant_indices": redundant},
    )


def verify(
    instance: Instance, schedule: Schedule, include_mutation: bool = False
) -> VerificationReport:
    checks = [
        verify_security(instance, schedule),
        verify_counts(instance, schedule),
        verify_level_isolation(instance, schedule),
        verify_structure_preservation(instance, schedule),
    ]
    if include_mutation:
        checks.append(verify_mutation_sensitivity(instance, schedule))
    return VerificationReport(
        regime=instance.regime,
        optimality_gap=optimality_gap(instance.clients),
        checks=checks,
    )
