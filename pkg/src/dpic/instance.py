"""LPS-FO side-information model.

Clients hold consecutive blocks of messages: client i owns base_size + (i - 1)
messages, and consecutive clients share exactly the last / first `overlap`
messages of their blocks.  Everything downstream (scheduling, decoding,
verification) is phrased in terms of the three segments of a block: the first
`overlap` messages (shared with the predecessor), the last `overlap` (shared
with the successor), and the unique messages strictly in between.
"""

from __future__ import annotations

from dataclasses import dataclass


class ParameterError(ValueError):
    """The requested (clients, base_size, overlap) combination is invalid."""


class SegmentError(ValueError):
    """A segment lookup fell outside the client's interval."""


def r_max(clients: int) -> int:
    """Size of the client group fully served in one scheduling round.

    Returns the unique positive integer r with
    (r-2)(r-1)/2 < clients <= r(r-1)/2.
    """
    if clients < 1:
        raise ParameterError(f"client count must be positive, got {clients}")
    r = 2
    while clients > r * (r - 1) // 2:
        r += 1
    return r


@dataclass(frozen=True)
class SideInfoInterval:
    """Contiguous side-information block [start, end] of one client."""

    client: int
    start: int
    end: int
    overlap: int

    @property
    def size(self) -> int:
        return self.end - self.start + 1

    @property
    def unique_size(self) -> int:
        return max(self.size - 2 * self.overlap, 0)

    def messages(self) -> range:
        return range(self.start, self.end + 1)

    def __contains__(self, message: int) -> bool:
        return self.start <= message <= self.end

    def head(self, j: int) -> int:
        """j-th message of the initial overlapping segment (1-based)."""
        if not 1 <= j <= self.overlap:
            raise SegmentError(
                f"client {self.client}: head index {j} outside [1, {self.overlap}]"
            )
        return self.start + j - 1

    def tail(self, j: int) -> int:
        """j-th message of the terminal overlapping segment (1-based)."""
        if not 1 <= j <= self.overlap:
            raise SegmentError(
                f"client {self.client}: tail index {j} outside [1, {self.overlap}]"
            )
        return self.end - self.overlap + j

    def unique(self, j: int) -> int:
        """j-th message strictly between the two overlap segments (1-based)."""
        if not 1 <= j <= self.unique_size:
            raise SegmentError(
                f"client {self.client}: unique index {j} outside "
                f"[1, {self.unique_size}]"
            )
        return self.start + self.overlap + j - 1

    def last_unique(self) -> int:
        if self.unique_size == 0:
            raise SegmentError(f"client {self.client}: unique segment is empty")
        return self.unique(self.unique_size)

    def segment(self, kind: str, j: int) -> int:
        """Dispatch on segment kind: 'F' (head), 'L' (tail), or 'U' (unique)."""
        if kind == "F":
            return self.head(j)
        if kind == "L":
            return self.tail(j)
        if kind == "U":
            return self.unique(j)
        raise SegmentError(f"unknown segment kind {kind!r}")


@dataclass(frozen=True)
class Instance:
    """An LPS-FO problem: `clients` clients, first block of `base_size`
    messages, consecutive blocks overlapping in `overlap` messages.
    """

    clients: int
    base_size: int
    overlap: int

    @property
    def target(self) -> int:
        """Final knowledge level every client must reach exactly."""
        return self.base_size + self.clients

    def interval_start(self, i: int) -> int:
        k, p = self.base_size, self.overlap
        return 1 + (i - 1) * (k - p) + (i - 1) * (i - 2) // 2

    @property
    def universe_size(self) -> int:
        return self.interval_start(self.clients) + self.base_size + self.clients - 2

    def side_info(self, i: int) -> SideInfoInterval:
        if not 1 <= i <= self.clients:
            raise ParameterError(
                f"client index {i} outside [1, {self.clients}]"
            )
        start = self.interval_start(i)
        return SideInfoInterval(
            client=i,
            start=start,
            end=start + self.base_size + (i - 1) - 1,
            overlap=self.overlap,
        )

    def segment(self, i: int, kind: str, j: int) -> int:
        return self.side_info(i).segment(kind, j)

    def last_unique(self, i: int) -> int:
        return self.side_info(i).last_unique()

    def failed_hypotheses(self) -> list[str]:
        """Scheme hypotheses this instance violates, as human-readable names."""
        failures = []
        if self.clients < 3:
            failures.append("C >= 3")
        if self.base_size < 2 * self.overlap:
            failures.append("K >= 2P")
        if self.overlap < r_max(self.clients) - 2:
            failures.append(
                f"P >= r_max - 2 (needs P >= {r_max(self.clients) - 2})"
            )
        return failures

    @property
    def theorem_covered(self) -> bool:
        return not self.failed_hypotheses()

    @property
    def regime(self) -> str:
        return "theorem-covered" if self.theorem_covered else "out-of-theorem"


def build_instance(clients: int, base_size: int, overlap: int) -> Instance:
    if clients < 2:
        raise ParameterError(f"need at least 2 clients, got {clients}")
    if base_size < 1:
        raise ParameterError(f"base size must be positive, got {base_size}")
    if overlap < 1:
        raise ParameterError(f"overlap must be positive, got {overlap}")
    if overlap > base_size:
        raise ParameterError(
            f"overlap {overlap} exceeds base size {base_size}"
        )
    return Instance(clients=clients, base_size=base_size, overlap=overlap)


def validate_lpsfo(
    intervals: list[SideInfoInterval], base_size: int, overlap: int
) -> bool:
    """True iff the intervals form a valid LPS-FO family: sizes grow by one
    starting at base_size and each consecutive pair overlaps in exactly the
    last / first `overlap` positions.
    """
    if not intervals:
        return False
    for idx, iv in enumerate(intervals):
        if iv.size != base_size + idx:
            return False
    for prev, cur in zip(intervals, intervals[1:]):
        if cur.start != prev.end - overlap + 1:
            return False
        if cur.start < prev.start or cur.end <= prev.end:
            return False
    return True
