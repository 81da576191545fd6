import math

import numpy as np
import pytest

from hitset.baselines import (SizeCapExceededError, exact_hitting_set,
                              greedy_hitting_set, is_hitting_set)
from hitset.lp import solve_lp
from hitset.setsystem import EmptyRangeError, SetSystem

from conftest import random_small_system
from oracles import naive_min_hitting_set_size


class TestGreedy:
    def test_triangle(self, triangle):
        hs = greedy_hitting_set(triangle)
        assert len(hs) == 2 and is_hitting_set(triangle, hs)

    def test_disjoint_singletons_forced(self):
        assert greedy_hitting_set(SetSystem(2, [(0,), (1,)])) == (0, 1)

    def test_single_range(self):
        assert len(greedy_hitting_set(SetSystem(4, [(1, 3)]))) == 1

    def test_lowest_index_tie_break(self):
        # both points hit one range each; greedy must take point 0 first
        assert greedy_hitting_set(SetSystem(2, [(0,), (1,)]))[0] == 0

    def test_rejects_empty_range(self):
        with pytest.raises(EmptyRangeError):
            greedy_hitting_set(SetSystem(2, [()]))


class TestExact:
    def test_triangle(self, triangle):
        hs = exact_hitting_set(triangle)
        assert hs == (0, 1)
        assert is_hitting_set(triangle, hs)

    def test_disjoint_chain(self):
        s = SetSystem(6, [(0, 1), (2, 3), (4, 5)])
        assert len(exact_hitting_set(s)) == 3

    def test_lp_lower_bound_holds(self):
        rng = np.random.default_rng(9)
        for _ in range(10):
            s = random_small_system(rng, m=9, n=12)
            assert len(exact_hitting_set(s)) >= math.ceil(solve_lp(s).z_star - 1e-6)

    def test_matches_exhaustive_enumeration(self):
        rng = np.random.default_rng(12)
        for _ in range(15):
            m = int(rng.integers(3, 13))
            n = int(rng.integers(2, 14))
            s = random_small_system(rng, m=m, n=n, density=0.3)
            hs = exact_hitting_set(s)
            assert is_hitting_set(s, hs)
            assert len(hs) == naive_min_hitting_set_size(m, s.ranges)

    def test_size_cap_exceeded(self, singletons):
        with pytest.raises(SizeCapExceededError, match=">= 5"):
            exact_hitting_set(singletons, size_cap=4)

    def test_size_cap_met(self, singletons):
        assert len(exact_hitting_set(singletons, size_cap=5)) == 5

    def test_deterministic(self):
        rng = np.random.default_rng(13)
        s = random_small_system(rng, m=10, n=12)
        assert exact_hitting_set(s) == exact_hitting_set(s)


def test_greedy_ratio_guarantee():
    rng = np.random.default_rng(21)
    for _ in range(15):
        m = int(rng.integers(4, 14))
        s = random_small_system(rng, m=m, n=int(rng.integers(3, 16)))
        opt = len(exact_hitting_set(s))
        grd = len(greedy_hitting_set(s))
        assert opt <= grd <= opt * (1 + math.log(m))
