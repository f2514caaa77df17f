import pytest

from dpic import build_instance, build_schedule, r_max

# Reference example (C=9, K=7, P=3): side-information intervals, the 13
# scheduled XOR supports with their transmitters, and the full per-client
# decode attribution matrix.

GOLDEN_INTERVALS = {
    1: (1, 7),
    2: (5, 12),
    3: (10, 18),
    4: (16, 25),
    5: (23, 33),
    6: (31, 42),
    7: (40, 52),
    8: (50, 63),
    9: (61, 75),
}

GOLDEN_SUPPORTS = [
    {5, 10},
    {10, 16},
    {10, 13},
    {16, 23},
    {16, 19},
    {23, 24},
    {23, 26},
    {23, 27},
    {23, 28},
    {40, 41, 50},
    {50, 61},
    {61, 64},
    {61, 65},
]

GOLDEN_TRANSMITTERS = [2, 3, 3, 4, 4, 4, 5, 5, 5, 7, 8, 9, 9]

_ = None
GOLDEN_TRACE = [
    [10, 16, 13, 23, 19, 24, 26, 27, 28, _, _, _, _],
    [_, 16, 13, 23, 19, 24, 26, 27, 28, _, _, _, _],
    [5, _, _, 23, 19, 24, 26, 27, 28, _, _, _, _],
    [5, 10, 13, _, _, _, 26, 27, 28, _, _, _, _],
    [5, 10, 13, 16, 19, _, _, _, _, _, _, _, _],
    [_, _, _, _, _, _, _, _, _, 50, 61, 64, 65],
    [_, _, _, _, _, _, _, _, _, _, 61, 64, 65],
    [_, _, _, _, _, _, _, _, _, _, _, 64, 65],
    [_, _, _, _, _, _, _, _, _, _, 50, _, _],
]


def sweep_params() -> list[tuple[int, int, int]]:
    """The acceptance sweep: C in [3, 40] with the minimal-overlap and
    wide-overlap (K, P) choices."""
    params = []
    for c in range(3, 41):
        r = r_max(c)
        p_min = max(1, r - 2)
        params.append((c, 2 * p_min, p_min))
        params.append((c, 2 * r + 3, r))
    return params


@pytest.fixture(scope="session")
def golden():
    instance = build_instance(9, 7, 3)
    return instance, build_schedule(instance)


@pytest.fixture(scope="session")
def sweep_schedules():
    out = []
    for c, k, p in sweep_params():
        instance = build_instance(c, k, p)
        out.append((instance, build_schedule(instance)))
    return out
