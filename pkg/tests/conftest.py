import pytest

from hitset.setsystem import SetSystem


@pytest.fixture
def triangle():
    """Three ranges on three points: {a,b}, {b,c}, {a,c}; optimum 2."""
    return SetSystem(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def singletons():
    """Five disjoint singleton ranges: forced hitting set of size 5."""
    return SetSystem(5, [(i,) for i in range(5)])


def random_small_system(rng, m, n, density=0.4):
    """Nonempty random ranges for oracle-vs-oracle tests."""
    ranges = []
    for _ in range(n):
        while True:
            row = tuple(int(x) for x in sorted(rng.choice(m, size=max(1, rng.binomial(m, density)), replace=False)))
            if row:
                ranges.append(row)
                break
    return SetSystem(m, ranges)
