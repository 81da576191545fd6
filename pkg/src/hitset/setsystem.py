"""Point/range incidence structures and the combinatorial measures on them.

Everything downstream (LP, samplers, packings) works on a :class:`SetSystem`:
a ground set of ``m`` points and ``n`` ranges stored as sorted index tuples,
i.e. the sparse rows of the 0/1 incidence matrix.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .seeds import make_rng

# Exhaustive searches blow up combinatorially; these are the hard guards.
MAX_POINTS_EXACT_VC = 24
MAX_POINTS_EXACT_CELLS = 12


class EmptyRangeError(ValueError):
    """An empty range makes the instance unhittable; solvers reject it."""


class SetSystem:
    """Immutable sparse set system: ``m`` points, ``n`` ranges.

    Each range is a strictly increasing tuple of point indices.  Duplicate
    ranges are allowed and kept as-is; projections collapse them into one
    trace.  ``point_payload`` is opaque per-point metadata (e.g. coordinates)
    carried along for reproducibility.
    """

    __slots__ = ("num_points", "ranges", "point_payload", "_range_sets", "_point_ranges")

    def __init__(self, num_points, ranges, point_payload=None):
        num_points = int(num_points)
        if num_points < 0:
            raise ValueError("num_points must be nonnegative")
        clean = []
        for pos, r in enumerate(ranges):
            r = tuple(int(x) for x in r)
            for a, b in zip(r, r[1:]):
                if b <= a:
                    raise ValueError(f"range {pos} is not strictly increasing: {r}")
            if r and (r[0] < 0 or r[-1] >= num_points):
                raise ValueError(f"range {pos} has an index outside [0, {num_points})")
            clean.append(r)
        self.num_points = num_points
        self.ranges = tuple(clean)
        self.point_payload = point_payload
        self._range_sets = None
        self._point_ranges = None

    @property
    def num_ranges(self) -> int:
        return len(self.ranges)

    @property
    def range_sets(self) -> tuple:
        """Ranges as frozensets (cached)."""
        if self._range_sets is None:
            self._range_sets = tuple(frozenset(r) for r in self.ranges)
        return self._range_sets

    @property
    def point_ranges(self) -> tuple:
        """Inverted index: for each point, the tuple of range indices containing it."""
        if self._point_ranges is None:
            idx = [[] for _ in range(self.num_points)]
            for ri, r in enumerate(self.ranges):
                for x in r:
                    idx[x].append(ri)
            self._point_ranges = tuple(tuple(lst) for lst in idx)
        return self._point_ranges

    def require_nonempty_ranges(self):
        for i, r in enumerate(self.ranges):
            if not r:
                raise EmptyRangeError(f"range {i} is empty")

    def __eq__(self, other):
        if not isinstance(other, SetSystem):
            return NotImplemented
        return self.num_points == other.num_points and self.ranges == other.ranges

    def __hash__(self):
        return hash((self.num_points, self.ranges))

    def __repr__(self):
        return f"SetSystem(m={self.num_points}, n={self.num_ranges})"


class WeightVector:
    """Nonnegative point weights, normalized to total mass 1 at construction."""

    __slots__ = ("weights",)

    def __init__(self, weights):
        w = np.asarray(weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("weights must be a nonempty 1-D sequence")
        if not np.all(np.isfinite(w)) or np.any(w < 0):
            raise ValueError("weights must be finite and nonnegative")
        total = float(w.sum())
        if total <= 0:
            raise ValueError("weights must have positive sum")
        self.weights = tuple(float(x) / total for x in w)

    @classmethod
    def uniform(cls, m: int) -> "WeightVector":
        return cls([1.0] * m)

    def mass(self, points) -> float:
        """Total weight of a point subset."""
        w = self.weights
        return float(sum(w[p] for p in points))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.weights)

    def __len__(self):
        return len(self.weights)

    def __getitem__(self, i):
        return self.weights[i]

    def __repr__(self):
        return f"WeightVector(m={len(self.weights)})"


@dataclass(frozen=True)
class Projection:
    """Deduplicated traces of all ranges on a point sample.

    ``traces[i]`` is the i-th distinct trace (in order of first appearance)
    and ``groups[i]`` lists the original range indices collapsing onto it;
    the groups partition ``{0..n-1}``.
    """

    base: SetSystem
    sample: tuple
    traces: tuple
    groups: tuple

    @property
    def multiplicities(self) -> tuple:
        return tuple(len(g) for g in self.groups)

    def traced_system(self) -> SetSystem:
        """The projected system reindexed onto the sample points 0..|Y|-1."""
        remap = {p: i for i, p in enumerate(self.sample)}
        ranges = [tuple(remap[x] for x in t) for t in self.traces]
        return SetSystem(len(self.sample), ranges)


def _check_range_index(system: SetSystem, i: int) -> int:
    i = int(i)
    if not 0 <= i < system.num_ranges:
        raise IndexError(f"range index {i} out of bounds for n={system.num_ranges}")
    return i


def _check_weights(system: SetSystem, w: WeightVector):
    if len(w) != system.num_points:
        raise ValueError(f"weight vector has {len(w)} entries, system has {system.num_points} points")


def weight_of(system: SetSystem, w: WeightVector, range_index: int) -> float:
    """Total weight of one range."""
    _check_weights(system, w)
    return w.mass(system.ranges[_check_range_index(system, range_index)])


def sym_diff_weight(system: SetSystem, w: WeightVector, i: int, j: int) -> float:
    """Weight of the symmetric difference of ranges ``i`` and ``j``."""
    _check_weights(system, w)
    a = system.range_sets[_check_range_index(system, i)]
    b = system.range_sets[_check_range_index(system, j)]
    return w.mass(a ^ b)


def project(system: SetSystem, sample) -> Projection:
    """Trace every range onto ``sample`` and deduplicate equal traces."""
    pts = sorted({int(x) for x in sample})
    if pts and (pts[0] < 0 or pts[-1] >= system.num_points):
        raise ValueError("sample contains an index outside the ground set")
    inside = set(pts)
    traces, groups, where = [], [], {}
    for ri, r in enumerate(system.ranges):
        t = tuple(x for x in r if x in inside)
        pos = where.get(t)
        if pos is None:
            where[t] = len(traces)
            traces.append(t)
            groups.append([ri])
        else:
            groups[pos].append(ri)
    return Projection(system, tuple(pts), tuple(traces), tuple(tuple(g) for g in groups))


def _is_shattered(range_sets, pts) -> bool:
    # pts is shattered iff the traces on it realize all 2^|pts| subsets
    need = 1 << len(pts)
    seen = set()
    for rs in range_sets:
        mask = 0
        for i, p in enumerate(pts):
            if p in rs:
                mask |= 1 << i
        seen.add(mask)
        if len(seen) == need:
            return True
    return False


def vc_dimension_exact(system: SetSystem, cap: int | None = None) -> int:
    """Size of the largest shattered point subset, by exhaustive search.

    Shattered sets are closed under taking subsets, so the search proceeds
    level-wise: size-(k+1) candidates are built only from shattered size-k
    sets.  When ``cap`` is given the search stops after size ``cap + 1``; a
    return value of ``cap + 1`` therefore means "at least cap + 1", while any
    smaller return value is exact.  Without a cap the instance must have at
    most 24 points.
    """
    m = system.num_points
    if cap is None:
        if m > MAX_POINTS_EXACT_VC:
            raise ValueError(f"m={m} > {MAX_POINTS_EXACT_VC}: pass cap= to bound the search")
        limit = m
    else:
        if cap < 0:
            raise ValueError("cap must be nonnegative")
        limit = min(cap + 1, m)
    if limit == 0 or system.num_ranges == 0:
        return 0
    sets = system.range_sets
    shattered = [(x,) for x in range(m) if _is_shattered(sets, (x,))]
    if not shattered:
        return 0
    d = 1
    while d < limit:
        prev = set(shattered)
        nxt = []
        for s in shattered:
            for x in range(s[-1] + 1, m):
                cand = s + (x,)
                # all size-d subsets must be shattered (dropping the last gives s)
                if all(cand[:i] + cand[i + 1:] in prev for i in range(d)):
                    if _is_shattered(sets, cand):
                        nxt.append(cand)
        if not nxt:
            return d
        shattered = nxt
        d += 1
    return d


def _best_prefix_cell_count(system: SetSystem, cols, k: int) -> int:
    """Max over prefixes of ``cols`` of the number of distinct depth-<=k rows."""
    n = system.num_ranges
    point_ranges = system.point_ranges
    sig = [0] * n
    depth = [0] * n
    best = 0
    for t, col in enumerate(cols):
        bit = 1 << t
        for ri in point_ranges[int(col)]:
            sig[ri] |= bit
            depth[ri] += 1
        cnt = len({s for s, dp in zip(sig, depth) if dp <= k})
        if cnt > best:
            best = cnt
    return best


def count_shallow_cells(system: SetSystem, w: WeightVector | None = None, *,
                        l: int, k: int, trials: int = 64, seed: int = 0) -> int:
    """Empirical lower bound on the shallow cell count over <=l-column submatrices.

    Draws ``trials`` random column orders (biased by ``w`` when given, uniform
    otherwise), walks every prefix of up to ``l`` columns, and counts the
    distinct restricted rows with at most ``k`` ones; the deterministic
    first-l-columns submatrix is always inspected too.  The maximum over all
    inspected submatrices is reported.  It never exceeds the true value, and
    for a fixed seed it is nondecreasing in both ``l`` and ``k``.
    """
    m = system.num_points
    if not 1 <= l <= m:
        raise ValueError(f"need 1 <= l <= m, got l={l}, m={m}")
    if k < 0:
        raise ValueError("k must be nonnegative")
    if w is not None:
        _check_weights(system, w)
    orders = [np.arange(m)]
    rng = make_rng(seed)
    for _ in range(int(trials)):
        if w is None:
            orders.append(rng.permutation(m))
        else:
            # exponential race = weighted sampling without replacement;
            # zero-weight points race at +inf and land last
            with np.errstate(divide="ignore"):
                keys = rng.exponential(size=m) / w.as_array()
            orders.append(np.argsort(keys, kind="stable"))
    return max(_best_prefix_cell_count(system, order[:l], k) for order in orders)


def shallow_cell_grid(system: SetSystem, l_max: int) -> list:
    """Exact shallow cell counts for every ``(l, k)`` with ``k <= l <= l_max``.

    One exhaustive pass over all column subsets of size up to ``l_max``;
    ``grid[l][k]`` is the maximum, over submatrices with at most ``l``
    columns, of the number of distinct rows with at most ``k`` ones.
    Capped at 12 ground points.
    """
    m = system.num_points
    if m > MAX_POINTS_EXACT_CELLS:
        raise ValueError(f"m={m} > {MAX_POINTS_EXACT_CELLS}: exhaustive cell counting refused")
    if not 1 <= l_max <= m:
        raise ValueError(f"need 1 <= l_max <= m, got l_max={l_max}, m={m}")
    sets = system.range_sets
    grid = [[0] * (l_max + 1) for _ in range(l_max + 1)]
    for size in range(1, l_max + 1):
        for cols in itertools.combinations(range(m), size):
            inside = frozenset(cols)
            traces = {rs & inside for rs in sets}
            by_depth = [0] * (size + 1)
            for t in traces:
                by_depth[len(t)] += 1
            cum = 0
            for k in range(l_max + 1):
                cum += by_depth[k] if k <= size else 0
                if cum > grid[size][k]:
                    grid[size][k] = cum
    for l in range(2, l_max + 1):  # "at most l columns" makes rows cumulative
        for k in range(l_max + 1):
            if grid[l - 1][k] > grid[l][k]:
                grid[l][k] = grid[l - 1][k]
    return grid


def count_shallow_cells_exact(system: SetSystem, *, l: int, k: int) -> int:
    """Exact shallow cell count: every submatrix with at most ``l`` columns.

    Exhaustive over all column subsets, so the ground set is capped at 12
    points.
    """
    m = system.num_points
    if not 1 <= l <= m:
        raise ValueError(f"need 1 <= l <= m, got l={l}, m={m}")
    if k < 0:
        raise ValueError("k must be nonnegative")
    return shallow_cell_grid(system, l)[l][min(k, l)]


def sauer_shelah_bound(y_size: int, d: int) -> int:
    """Upper bound on the number of traces on a set of ``y_size`` points."""
    return sum(math.comb(y_size, i) for i in range(min(d, y_size) + 1))
