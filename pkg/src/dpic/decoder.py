"""Client-side decoding simulation.

Two independent views of what a client can learn from a schedule:

* a peeling decoder that repeatedly resolves any received XOR with exactly
  one unknown operand (the operational decoding), and
* a GF(2) linear-span oracle that asks whether a message's unit vector lies
  in the span of the client's known singletons plus all received combination
  vectors (the strongest linear adversary).

The peeling decoder also produces the per-transmission attribution matrix
used by the trace output.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .instance import Instance
from .scheduler import Schedule


@dataclass(frozen=True)
class DecodeTrace:
    """rows[c-1][t] is the message client c attributes to transmission t,
    or None if that transmission yielded it nothing.
    """

    rows: tuple[tuple[int | None, ...], ...]


def initial_knowledge(instance: Instance, client: int) -> set[int]:
    return set(instance.side_info(client).messages())


def peel(
    instance: Instance, schedule: Schedule, client: int
) -> tuple[set[int], list[int | None]]:
    """Iterate the peeling decoder to fixpoint over the client's received
    history.  Returns the decoded set and the trace row attributing each
    decoded message to the transmission it was peeled from.
    """
    known = initial_knowledge(instance, client)
    row: list[int | None] = [None] * len(schedule.transmissions)
    changed = True
    while changed:
        changed = False
        for idx, tx in enumerate(schedule.transmissions):
            unknown = [m for m in tx.support if m not in known]
            if len(unknown) == 1:
                message = unknown[0]
                known.add(message)
                row[idx] = message
                changed = True
    return known - initial_knowledge(instance, client), row


def _reduce(vector: int, pivots: dict[int, int]) -> int:
    while vector:
        bit = vector.bit_length() - 1
        if bit not in pivots:
            return vector
        vector ^= pivots[bit]
    return 0


def span_decodable(
    instance: Instance,
    schedule: Schedule,
    client: int,
    transmissions=None,
) -> set[int]:
    """Messages whose unit vector lies in the GF(2) span of the client's
    side-information singletons and the received supports.

    Each transmission reduces, for this client, to its unknown-support
    residue; a message is decodable iff its unit vector is in the row space
    of the residues.  `transmissions` restricts the history (defaults to the
    whole schedule).
    """
    if transmissions is None:
        transmissions = schedule.transmissions
    side = initial_knowledge(instance, client)
    pivots: dict[int, int] = {}
    candidates: set[int] = set()
    for tx in transmissions:
        residue = 0
        for m in tx.support:
            if m not in side:
                residue |= 1 << m
                candidates.add(m)
        residue = _reduce(residue, pivots)
        if residue:
            pivots[residue.bit_length() - 1] = residue
    return {m for m in candidates if _reduce(1 << m, pivots) == 0}


def decode_trace(instance: Instance, schedule: Schedule) -> DecodeTrace:
    rows = tuple(
        tuple(peel(instance, schedule, c)[1])
        for c in range(1, instance.clients + 1)
    )
    return DecodeTrace(rows=rows)


def simulate_payloads(
    instance: Instance, schedule: Schedule, bits: int, seed: int
) -> bool:
    """End-to-end consistency check with actual payload values.

    Draws one `bits`-bit payload per message from a deterministic seeded
    generator, materializes each transmission as the XOR of its support's
    payloads, replays the peeling decoder on values, and checks every
    recovered payload against the ground truth.
    """
    if bits < 1:
        raise ValueError(f"payload width must be positive, got {bits}")
    rng = random.Random(seed)
    payloads = {
        m: rng.getrandbits(bits) for m in range(1, instance.universe_size + 1)
    }
    coded = []
    for tx in schedule.transmissions:
        value = 0
        for m in tx.support:
            value ^= payloads[m]
        coded.append(value)

    for client in range(1, instance.clients + 1):
        values = {m: payloads[m] for m in initial_knowledge(instance, client)}
        changed = True
        while changed:
            changed = False
            for idx, tx in enumerate(schedule.transmissions):
                unknown = [m for m in tx.support if m not in values]
                if len(unknown) == 1:
                    recovered = coded[idx]
                    for m in tx.support:
                        if m != unknown[0]:
                            recovered ^= values[m]
                    values[unknown[0]] = recovered
                    changed = True
        decoded, _ = peel(instance, schedule, client)
        for m in decoded:
            if values.get(m) != payloads[m]:
                return False
    return True
