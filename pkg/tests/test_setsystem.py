import itertools
import math

import numpy as np
import pytest

from hitset.setsystem import (EmptyRangeError, SetSystem, WeightVector,
                              count_shallow_cells, count_shallow_cells_exact,
                              project, sauer_shelah_bound, sym_diff_weight,
                              vc_dimension_exact, weight_of)

from oracles import naive_shallow_cells, naive_vc_dimension


class TestConstruction:
    def test_rejects_out_of_bounds_index(self):
        with pytest.raises(ValueError):
            SetSystem(3, [(0, 3)])
        with pytest.raises(ValueError):
            SetSystem(3, [(-1, 0)])

    def test_rejects_unsorted_or_duplicate_indices(self):
        with pytest.raises(ValueError):
            SetSystem(3, [(1, 0)])
        with pytest.raises(ValueError):
            SetSystem(3, [(1, 1)])

    def test_duplicate_ranges_are_kept(self):
        s = SetSystem(2, [(0,), (0,)])
        assert s.num_ranges == 2

    def test_empty_range_allowed_but_rejected_by_solver_gate(self):
        s = SetSystem(2, [(), (0,)])
        with pytest.raises(EmptyRangeError):
            s.require_nonempty_ranges()

    def test_equality(self):
        assert SetSystem(2, [(0,)]) == SetSystem(2, [(0,)])
        assert SetSystem(2, [(0,)]) != SetSystem(2, [(1,)])


class TestWeightVector:
    def test_normalizes_any_positive_vector(self):
        w = WeightVector([2.0, 2.0, 4.0])
        assert w.weights == (0.25, 0.25, 0.5)
        assert abs(sum(w.weights) - 1.0) <= 1e-9

    def test_rejects_negative_and_zero_sum(self):
        with pytest.raises(ValueError):
            WeightVector([1.0, -0.1])
        with pytest.raises(ValueError):
            WeightVector([0.0, 0.0])

    def test_uniform(self):
        assert WeightVector.uniform(4).weights == (0.25,) * 4


class TestWeightOf:
    def test_uniform_pair(self, triangle):
        assert weight_of(triangle, WeightVector.uniform(3), 0) == pytest.approx(2 / 3)

    def test_zero_on_range(self, triangle):
        w = WeightVector([0.0, 0.0, 1.0])
        assert weight_of(triangle, w, 0) == 0.0

    def test_direct_sum(self, triangle):
        w = WeightVector([0.5, 0.3, 0.2])
        assert weight_of(triangle, w, 2) == pytest.approx(0.7)

    def test_index_out_of_bounds(self, triangle):
        with pytest.raises(IndexError):
            weight_of(triangle, WeightVector.uniform(3), 3)


class TestSymDiffWeight:
    def test_uniform_overlap(self, triangle):
        assert sym_diff_weight(triangle, WeightVector.uniform(3), 0, 1) == pytest.approx(2 / 3)

    def test_identity_is_zero(self, triangle):
        assert sym_diff_weight(triangle, WeightVector.uniform(3), 1, 1) == 0.0

    def test_disjoint_full_mass(self):
        s = SetSystem(3, [(0,), (1, 2)])
        w = WeightVector([0.2, 0.3, 0.5])
        assert sym_diff_weight(s, w, 0, 1) == pytest.approx(1.0)

    def test_symmetry_and_inclusion_exclusion(self):
        rng = np.random.default_rng(5)
        for _ in range(30):
            m = 8
            ranges = [tuple(sorted(rng.choice(m, size=rng.integers(1, m), replace=False).tolist()))
                      for _ in range(6)]
            s = SetSystem(m, ranges)
            w = WeightVector(rng.random(m) + 0.01)
            for i, j in itertools.combinations(range(6), 2):
                lhs = sym_diff_weight(s, w, i, j)
                assert lhs == pytest.approx(sym_diff_weight(s, w, j, i))
                inter = set(ranges[i]) & set(ranges[j])
                rhs = weight_of(s, w, i) + weight_of(s, w, j) - 2 * w.mass(inter)
                assert lhs == pytest.approx(rhs)


class TestProject:
    def test_triangle_single_point(self, triangle):
        p = project(triangle, [0])
        assert set(p.traces) == {(0,), ()}
        assert sorted(p.multiplicities) == [1, 2]

    def test_full_sample_dedups_ranges(self):
        s = SetSystem(3, [(0, 1), (0, 1), (2,)])
        p = project(s, range(3))
        assert p.traces == ((0, 1), (2,))
        assert p.groups == ((0, 1), (2,))

    def test_empty_sample_single_empty_trace(self, triangle):
        p = project(triangle, [])
        assert p.traces == ((),)
        assert p.multiplicities == (3,)

    def test_groups_partition_all_ranges(self, triangle):
        p = project(triangle, [0, 1])
        assert sorted(x for g in p.groups for x in g) == [0, 1, 2]

    def test_trace_count_bound(self, triangle):
        p = project(triangle, [0, 1])
        assert len(p.traces) <= min(triangle.num_ranges, 2 ** len(p.sample))

    def test_idempotent(self, triangle):
        y = [0, 2]
        p = project(triangle, y)
        again = project(SetSystem(triangle.num_points, p.traces), y)
        assert set(again.traces) == set(p.traces)

    def test_out_of_bounds_sample(self, triangle):
        with pytest.raises(ValueError):
            project(triangle, [5])


class TestVcDimension:
    def test_intervals_on_four_points(self):
        ranges = [tuple(range(i, j + 1)) for i in range(4) for j in range(i, 4)]
        s = SetSystem(4, ranges)
        assert vc_dimension_exact(s) == 2
        assert naive_vc_dimension(4, ranges) == 2

    def test_single_range_single_point(self):
        # {0} is never shattered: the empty trace is missing
        assert vc_dimension_exact(SetSystem(1, [(0,)])) == 0

    def test_all_subsets_of_three(self):
        ranges = [tuple(c) for size in range(4) for c in itertools.combinations(range(3), size)]
        assert vc_dimension_exact(SetSystem(3, ranges)) == 3

    def test_matches_naive_oracle_on_random_systems(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            m = int(rng.integers(2, 8))
            n = int(rng.integers(1, 12))
            ranges = []
            for _ in range(n):
                size = int(rng.integers(0, m + 1))
                ranges.append(tuple(sorted(rng.choice(m, size=size, replace=False).tolist())))
            s = SetSystem(m, ranges)
            assert vc_dimension_exact(s) == naive_vc_dimension(m, ranges)

    def test_cap_reports_lower_bound(self):
        ranges = [tuple(c) for size in range(4) for c in itertools.combinations(range(3), size)]
        s = SetSystem(3, ranges)
        assert vc_dimension_exact(s, cap=1) == 2  # means ">= 2"
        assert vc_dimension_exact(s, cap=3) == 3  # exact, below the cap

    def test_refuses_large_instance_without_cap(self):
        s = SetSystem(30, [(0,)])
        with pytest.raises(ValueError):
            vc_dimension_exact(s)

    def test_sauer_shelah_consistency(self, triangle):
        d = vc_dimension_exact(triangle)
        for size in range(0, 4):
            for pts in itertools.combinations(range(3), size):
                assert len(set(project(triangle, pts).traces)) <= sauer_shelah_bound(size, d)


class TestShallowCells:
    def test_full_depth_counts_distinct_ranges(self, triangle):
        assert count_shallow_cells_exact(triangle, l=3, k=3) == 3
        assert count_shallow_cells(triangle, l=3, k=3, trials=16, seed=0) == 3

    def test_triangle_depth_one(self, triangle):
        # a single-column submatrix realizes two depth-<=1 cells ({x} and {})
        assert naive_shallow_cells(3, triangle.ranges, 3, 1) == 2
        assert count_shallow_cells_exact(triangle, l=3, k=1) == 2

    def test_depth_zero(self, triangle):
        # every 1-or-2 column submatrix leaves some range empty
        assert count_shallow_cells(triangle, l=3, k=0, trials=16, seed=0) == 1
        full = SetSystem(2, [(0, 1), (0, 1)])
        assert count_shallow_cells_exact(full, l=2, k=0) == 0  # no range ever misses a column

    def test_estimator_never_exceeds_exact(self):
        rng = np.random.default_rng(23)
        for _ in range(10):
            m = int(rng.integers(3, 9))
            n = int(rng.integers(2, 10))
            ranges = []
            for _ in range(n):
                size = int(rng.integers(0, m + 1))
                ranges.append(tuple(sorted(rng.choice(m, size=size, replace=False).tolist())))
            s = SetSystem(m, ranges)
            for l in range(1, m + 1):
                for k in range(0, l + 1):
                    est = count_shallow_cells(s, l=l, k=k, trials=20, seed=7)
                    exact = naive_shallow_cells(m, ranges, l, k)
                    assert est <= exact
                    assert count_shallow_cells_exact(s, l=l, k=k) == exact

    def test_monotone_in_l_and_k_for_fixed_seed(self):
        rng = np.random.default_rng(31)
        ranges = [tuple(sorted(rng.choice(10, size=int(rng.integers(1, 10)), replace=False).tolist()))
                  for _ in range(12)]
        s = SetSystem(10, ranges)
        vals = {(l, k): count_shallow_cells(s, l=l, k=k, trials=12, seed=3)
                for l in range(1, 11) for k in range(0, 11)}
        for l in range(1, 10):
            for k in range(0, 10):
                assert vals[(l, k)] <= vals[(l + 1, k)]
                assert vals[(l, k)] <= vals[(l, k + 1)]

    def test_weighted_column_bias(self):
        s = SetSystem(4, [(0,), (1,), (2, 3)])
        w = WeightVector([1.0, 1.0, 0.0, 0.0])
        # zero-weight columns race last, so the l=2 prefix is always {0,1}
        assert count_shallow_cells(s, w, l=2, k=1, trials=8, seed=1) == 3

    def test_rejects_bad_l(self, triangle):
        with pytest.raises(ValueError):
            count_shallow_cells(triangle, l=0, k=1)
        with pytest.raises(ValueError):
            count_shallow_cells(triangle, l=4, k=1)
