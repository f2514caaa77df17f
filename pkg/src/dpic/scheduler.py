"""Recursive transmission scheduling for LPS-FO instances.

Each round (level) fully serves a group of r_max clients out of the
remaining ones and leaves the rest untouched; the residual clients form a
smaller LPS-FO instance and the recursion continues until one or two clients
remain, which are handled by explicit base cases.
"""

from __future__ import annotations

from dataclasses import dataclass

from .instance import Instance, SegmentError, r_max

PHASE1 = "phase1"
PHASE2 = "phase2"
PHASE3 = "phase3"
BASE2 = "base2"
BASE1 = "base1"

GENERAL = "general"
SPECIAL = "special"


class SchedulingError(RuntimeError):
    """The schedule cannot be constructed for this instance."""


@dataclass(frozen=True)
class LevelContext:
    """One recursion level: `clients` remaining clients starting right after
    original client index `offset`, the first of them holding `base_size`
    messages.  `group_size` clients are fully served at this level.
    """

    level: int
    offset: int
    clients: int
    base_size: int
    group_size: int
    case: str  # "general", "special", "base2" or "base1"


@dataclass(frozen=True)
class Transmission:
    """One broadcast: XOR of the `support` messages, sent by `transmitter`
    (original client index).  Slot numbering restarts per (level, phase).
    """

    transmitter: int
    support: frozenset[int]
    level: int
    phase: str
    slot: int


@dataclass(frozen=True)
class Schedule:
    instance: Instance
    transmissions: tuple[Transmission, ...]
    levels: tuple[LevelContext, ...]


def is_special_case(clients: int, r: int) -> bool:
    return clients == (r - 2) * (r - 1) // 2 + 1


def phase1_size(ctx: LevelContext) -> int:
    r = ctx.group_size
    if ctx.case == SPECIAL:
        return (r - 3) * (r - 4) // 2 + 1
    return (r - 2) * (r - 3) // 2


def expected_phase_counts(ctx: LevelContext) -> dict[str, int]:
    """Number of transmissions each phase of the level must emit."""
    if ctx.case == GENERAL:
        t1 = phase1_size(ctx)
        r = ctx.group_size
        return {
            PHASE1: t1,
            PHASE2: r - 2,
            PHASE3: ctx.clients - r - t1 + 2,
        }
    if ctx.case == SPECIAL:
        t1 = phase1_size(ctx)
        r = ctx.group_size
        return {
            PHASE1: t1,
            PHASE2: r - 3,
            PHASE3: ctx.clients - r - t1 + 3,
        }
    if ctx.case == BASE2:
        return {BASE2: 3}
    return {BASE1: 1}


def predicted_count(clients: int) -> int:
    """Total transmissions the recursive scheme needs for `clients` clients."""
    if clients < 0:
        raise ValueError(f"client count must be non-negative, got {clients}")
    if clients <= 2:
        return (0, 1, 3)[clients]
    return clients + predicted_count(clients - r_max(clients))


def recursion_chain(clients: int) -> list[int]:
    """Residual client counts visited by the recurrence, e.g. [9, 4, 0]."""
    chain = [clients]
    while chain[-1] > 2:
        chain.append(chain[-1] - r_max(chain[-1]))
    return chain


def schedule_general_case(instance: Instance, ctx: LevelContext) -> list[Transmission]:
    o, r, remaining = ctx.offset, ctx.group_size, ctx.clients
    t1 = phase1_size(ctx)
    spare = remaining - r - t1  # unique messages needed beyond the tail pairs
    if not 0 <= spare <= r - 3:
        raise SchedulingError(
            f"level {ctx.level}: phase balance out of range "
            f"(clients={remaining}, group={r}, phase1={t1})"
        )
    out: list[Transmission] = []

    def seg(i: int, kind: str, j: int) -> int:
        return instance.segment(o + i, kind, j)

    # Phase 1: intermediate clients 2 .. r-2, client i+1 sends i transmissions
    slot = 0
    for i in range(1, r - 2):
        c = i + 1
        pair = frozenset({seg(c, "F", 1), seg(c, "L", 1)})
        slot += 1
        out.append(Transmission(o + c, pair, ctx.level, PHASE1, slot))
        for j in range(1, i):
            slot += 1
            out.append(
                Transmission(
                    o + c,
                    frozenset({seg(c, "F", 1), seg(c, "U", j)}),
                    ctx.level,
                    PHASE1,
                    slot,
                )
            )

    # Phase 2: client r-1 pairs its head with tail, uniques, then tail pairs
    c = r - 1
    slot = 1
    out.append(
        Transmission(
            o + c,
            frozenset({seg(c, "F", 1), seg(c, "L", 1)}),
            ctx.level,
            PHASE2,
            slot,
        )
    )
    for j in range(1, spare + 1):
        slot += 1
        out.append(
            Transmission(
                o + c,
                frozenset({seg(c, "F", 1), seg(c, "U", j)}),
                ctx.level,
                PHASE2,
                slot,
            )
        )
    for j in range(spare + 1, r - 2):
        q = j - spare
        slot += 1
        out.append(
            Transmission(
                o + c,
                frozenset({seg(c, "L", 1), seg(c, "L", q + 1)}),
                ctx.level,
                PHASE2,
                slot,
            )
        )

    # Phase 3: client r pairs its head with its first uniques
    c = r
    for j in range(1, spare + 3):
        out.append(
            Transmission(
                o + c,
                frozenset({seg(c, "F", 1), seg(c, "U", j)}),
                ctx.level,
                PHASE3,
                j,
            )
        )
    return out


def schedule_special_case(instance: Instance, ctx: LevelContext) -> list[Transmission]:
    o, r, remaining = ctx.offset, ctx.group_size, ctx.clients
    t1 = phase1_size(ctx)
    out: list[Transmission] = []

    def seg(i: int, kind: str, j: int) -> int:
        return instance.segment(o + i, kind, j)

    # Phase 1: client 2 opens with a triple only its predecessor can use,
    # then clients 3 .. r-2 follow the general pattern shifted by one.
    triple = frozenset({seg(2, "F", 1), seg(2, "F", 2), seg(2, "L", 1)})
    out.append(Transmission(o + 2, triple, ctx.level, PHASE1, 1))
    slot = 1
    for i in range(1, r - 3):
        c = i + 2
        slot += 1
        out.append(
            Transmission(
                o + c,
                frozenset({seg(c, "F", 1), seg(c, "L", 1)}),
                ctx.level,
                PHASE1,
                slot,
            )
        )
        for j in range(1, i):
            slot += 1
            out.append(
                Transmission(
                    o + c,
                    frozenset({seg(c, "F", 1), seg(c, "U", j)}),
                    ctx.level,
                    PHASE1,
                    slot,
                )
            )

    # Phase 2: client r-1 sends one head/tail pair then tail/unique pairs
    c = r - 1
    slot = 1
    out.append(
        Transmission(
            o + c,
            frozenset({seg(c, "F", 1), seg(c, "L", 1)}),
            ctx.level,
            PHASE2,
            slot,
        )
    )
    for j in range(1, r - 3):
        slot += 1
        out.append(
            Transmission(
                o + c,
                frozenset({seg(c, "L", 1), seg(c, "U", j)}),
                ctx.level,
                PHASE2,
                slot,
            )
        )

    # Phase 3: client r pairs its head with its first uniques
    c = r
    for j in range(1, remaining - r - t1 + 4):
        out.append(
            Transmission(
                o + c,
                frozenset({seg(c, "F", 1), seg(c, "U", j)}),
                ctx.level,
                PHASE3,
                j,
            )
        )
    return out


def schedule_base(instance: Instance, ctx: LevelContext) -> list[Transmission]:
    o = ctx.offset
    if ctx.clients == 2:
        second = instance.side_info(o + 2)
        first = instance.side_info(o + 1)
        return [
            Transmission(
                o + 2,
                frozenset({second.head(1), second.unique(1)}),
                ctx.level,
                BASE2,
                1,
            ),
            Transmission(
                o + 2,
                frozenset({second.head(1), second.unique(2)}),
                ctx.level,
                BASE2,
                2,
            ),
            Transmission(
                o + 1,
                frozenset({first.tail(1), first.unique(1)}),
                ctx.level,
                BASE2,
                3,
            ),
        ]
    if ctx.clients == 1:
        # The next-to-last client (already satisfied at the previous level)
        # pairs its tail overlap with its last unique message, which only the
        # final client can resolve.
        helper = instance.side_info(instance.clients - 1)
        return [
            Transmission(
                instance.clients - 1,
                frozenset({helper.tail(1), helper.last_unique()}),
                ctx.level,
                BASE1,
                1,
            )
        ]
    raise SchedulingError(f"base case called with {ctx.clients} clients")


def build_schedule(instance: Instance, force: bool = False) -> Schedule:
    """Run the full recursion and concatenate all level outputs in order.

    Out-of-theorem instances are refused unless `force` is given; forcing
    runs the same construction and leaves honesty to the verifier.
    """
    if not instance.theorem_covered and not force:
        raise SchedulingError(
            "theorem hypothesis violated: "
            + "; ".join(instance.failed_hypotheses())
        )
    transmissions: list[Transmission] = []
    levels: list[LevelContext] = []
    level, offset = 1, 0
    remaining, first_size = instance.clients, instance.base_size
    while remaining > 2:
        r = r_max(remaining)
        case = SPECIAL if is_special_case(remaining, r) else GENERAL
        ctx = LevelContext(level, offset, remaining, first_size, r, case)
        builder = schedule_special_case if case == SPECIAL else schedule_general_case
        try:
            out = builder(instance, ctx)
        except SegmentError as err:
            raise SchedulingError(f"level {level} ({case}): {err}") from err
        if len(out) != remaining:
            raise SchedulingError(
                f"level {level} emitted {len(out)} transmissions, "
                f"expected {remaining}"
            )
        transmissions.extend(out)
        levels.append(ctx)
        offset += r
        remaining -= r
        first_size += r
        level += 1
    if remaining > 0:
        case = BASE2 if remaining == 2 else BASE1
        ctx = LevelContext(level, offset, remaining, first_size, remaining, case)
        try:
            transmissions.extend(schedule_base(instance, ctx))
        except SegmentError as err:
            raise SchedulingError(f"level {level} ({case}): {err}") from err
        levels.append(ctx)
    return Schedule(
        instance=instance,
        transmissions=tuple(transmissions),
        levels=tuple(levels),
    )
