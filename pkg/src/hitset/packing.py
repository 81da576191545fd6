"""Weighted packings, their size bounds, and unit-distance graph checks.

A (k, delta)-packing is a sub-collection of ranges in which every member has
mass at most k and every pair differs by symmetric-difference mass at least
delta.  The module builds maximal packings greedily, evaluates the
shallow-packing size bound, and runs the Monte-Carlo projection check plus
the unit-distance-graph edge/weight bounds that underpin it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import eval_phi
from .seeds import make_rng
from .setsystem import Projection, SetSystem, WeightVector, sym_diff_weight

MASS_TOL = 1e-12


def is_packing(system: SetSystem, w: WeightVector, members, k: float, delta: float):
    """Check both packing conditions; returns ``(ok, first_violation)``.

    The violation is ``("weight", index)`` for an overweight member or
    ``("symdiff", i, j)`` for a pair that is too close, with indices into
    the original range list.
    """
    members = [int(i) for i in members]
    for i in members:
        if w.mass(system.ranges[i]) > k + MASS_TOL:
            return False, ("weight", i)
    for a in range(len(members)):
        for b in range(a + 1, len(members)):
            if sym_diff_weight(system, w, members[a], members[b]) < delta - MASS_TOL:
                return False, ("symdiff", members[a], members[b])
    return True, None


@dataclass(frozen=True)
class Packing:
    """A certified weighted (k, delta)-packing over a base system."""

    base: SetSystem
    weights: WeightVector
    members: tuple
    k: float
    delta: float

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError("delta must be positive")
        ok, violation = is_packing(self.base, self.weights, self.members, self.k, self.delta)
        if not ok:
            raise ValueError(f"not a ({self.k}, {self.delta})-packing: violation {violation}")

    def __len__(self):
        return len(self.members)


def greedy_maximal_packing(system: SetSystem, w: WeightVector, k: float,
                           delta: float, order_seed: int = 0) -> Packing:
    """Maximal packing by a single seeded-random scan.

    Scans the ranges in a random order, keeping each range whose mass is at
    most k and whose symmetric difference to every kept member is at least
    delta.  Rejection reasons never go away as members accumulate, so one
    pass yields a maximal packing.
    """
    if not delta > 0:
        raise ValueError("delta must be positive")
    order = make_rng(order_seed).permutation(system.num_ranges)
    kept = []
    for ri in order:
        ri = int(ri)
        if w.mass(system.ranges[ri]) > k + MASS_TOL:
            continue
        if all(sym_diff_weight(system, w, ri, q) >= delta - MASS_TOL for q in kept):
            kept.append(ri)
    return Packing(system, w, tuple(sorted(kept)), k, delta)


def shallow_packing_bound(d: int, delta: float, k: float, phi) -> float:
    """Size bound for any (k, delta)-packing: (24 d / delta) * phi(8d/delta, 48dk/delta)."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    if not 0 < delta:
        raise ValueError("delta must be positive")
    return (24.0 * d / delta) * eval_phi(phi, 8.0 * d / delta, 48.0 * d * k / delta)


@dataclass(frozen=True)
class UnitDistanceGraph:
    """Graph on deduplicated traces; edges join traces differing in one point.

    Vertex weights are the trace multiplicities, an edge weighs the minimum
    of its endpoints, and ``total_weight`` sums the edge weights.
    """

    vertices: tuple
    edges: tuple
    vertex_weights: tuple
    edge_weights: tuple
    total_weight: int

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)


def build_unit_distance_graph(proj: Projection) -> UnitDistanceGraph:
    """Unit-distance graph of a projection's deduplicated traces."""
    traces = [frozenset(t) for t in proj.traces]
    index = {t: i for i, t in enumerate(traces)}
    mults = proj.multiplicities
    edges, weights = [], []
    for i, t in enumerate(traces):
        for y in proj.sample:
            other = t | {y} if y not in t else t - {y}
            j = index.get(other)
            if j is not None and j > i:
                edges.append((i, j))
                weights.append(min(mults[i], mults[j]))
    return UnitDistanceGraph(
        vertices=proj.traces,
        edges=tuple(edges),
        vertex_weights=tuple(mults),
        edge_weights=tuple(weights),
        total_weight=int(sum(weights)),
    )


def check_edge_bound(graph: UnitDistanceGraph, d: int) -> bool:
    """Edge-count bound |E| <= d |V| for a VC bound d of the traced system."""
    return graph.num_edges <= d * graph.num_vertices


def check_total_weight_bound(graph: UnitDistanceGraph, d: int, packing_size: int) -> bool:
    """Total edge weight bound W <= 2 d |P| (|P| counts members, not traces)."""
    return graph.total_weight <= 2 * d * packing_size


def monte_carlo_packing_lemma(packing: Packing, d: int, trials: int = 10_000,
                              seed: int = 0) -> dict:
    """Estimate E[|traces of the packing on a mass-weighted sample|].

    Draws ``trials`` independent samples of ``s = ceil(8 d / delta) - 1``
    points iid proportional to the weights, with replacement (inverse CDF on
    the cumulative weight vector), projects the members onto the unique
    sampled points, and reports the packing size ``lhs``, the mean projected
    count and its standard error.  The packing-lemma assertion
    ``lhs <= 2 E[...]`` is then testable as ``lhs <= 2 (mean + 3 stderr)``.
    """
    if d < 1:
        raise ValueError("d must be a positive integer")
    if trials < 2:
        raise ValueError("need at least 2 trials for a standard error")
    s = math.ceil(8.0 * d / packing.delta) - 1
    if s < 1:
        raise ValueError(f"sample size s={s} < 1: delta={packing.delta} too large for d={d}")

    cum = np.cumsum(packing.weights.as_array())
    cum[-1] = 1.0  # guard the top bin against round-off
    member_masks = [sum(1 << x for x in packing.base.ranges[i]) for i in packing.members]

    rng = make_rng(seed)
    counts = np.empty(trials)
    for t in range(trials):
        draws = np.searchsorted(cum, rng.random(s), side="right")
        y_mask = 0
        for p in draws:
            y_mask |= 1 << int(p)
        counts[t] = len({mask & y_mask for mask in member_masks})

    mean = float(counts.mean())
    stderr = float(counts.std(ddof=1) / math.sqrt(trials))
    return {
        "lhs": len(packing.members),
        "mean_proj": mean,
        "stderr": stderr,
        "s": s,
        "trials": trials,
    }
