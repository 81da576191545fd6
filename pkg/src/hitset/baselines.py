"""Reference hitting-set solvers: greedy and exact branch-and-bound."""

from __future__ import annotations

import math

from .lp import solve_lp
from .setsystem import SetSystem


class SizeCapExceededError(RuntimeError):
    """No hitting set within the requested size cap; the optimum is >= cap + 1."""


def greedy_hitting_set(system: SetSystem) -> tuple:
    """Repeatedly pick the point hitting the most unhit ranges (lowest index wins ties)."""
    system.require_nonempty_ranges()
    point_ranges = system.point_ranges
    unhit = set(range(system.num_ranges))
    chosen = []
    while unhit:
        best_pt, best_cnt = -1, 0
        for p in range(system.num_points):
            cnt = sum(1 for r in point_ranges[p] if r in unhit)
            if cnt > best_cnt:
                best_pt, best_cnt = p, cnt
        chosen.append(best_pt)
        unhit.difference_update(point_ranges[best_pt])
    return tuple(sorted(chosen))


def is_hitting_set(system: SetSystem, candidate) -> bool:
    h = set(candidate)
    return all(not h.isdisjoint(r) for r in system.range_sets)


def _disjoint_ranges_bound(range_sets, unhit) -> int:
    # pairwise-disjoint unhit ranges each need their own point
    used = set()
    cnt = 0
    for ri in unhit:
        rs = range_sets[ri]
        if used.isdisjoint(rs):
            used |= rs
            cnt += 1
    return cnt


def exact_hitting_set(system: SetSystem, size_cap: int | None = None) -> tuple:
    """Minimum-cardinality hitting set by branch and bound.

    Branches on the members of the smallest unhit range (ties to the lowest
    index), seeded with the greedy solution as incumbent and pruned by the LP
    lower bound and a disjoint-unhit-ranges bound.  Fully deterministic.
    With ``size_cap`` the search never explores solutions larger than the cap
    and raises :class:`SizeCapExceededError` when none fits.
    """
    system.require_nonempty_ranges()
    range_sets = system.range_sets
    point_ranges = system.point_ranges
    n = system.num_ranges

    greedy = greedy_hitting_set(system)
    lp_bound = math.ceil(solve_lp(system).z_star - 1e-6)
    best = sorted(greedy)
    best_size = len(greedy)

    def smallest_unhit(hit_counts):
        pick = -1
        for ri in range(n):
            if hit_counts[ri] == 0 and (pick < 0 or len(range_sets[ri]) < len(range_sets[pick])):
                pick = ri
        return pick

    def dfs(chosen, hit_counts):
        nonlocal best, best_size
        if best_size <= lp_bound and (size_cap is None or best_size <= size_cap):
            return  # incumbent matches the LP bound: provably optimal
        target = smallest_unhit(hit_counts)
        if target < 0:
            if len(chosen) < best_size:
                best = sorted(chosen)
                best_size = len(chosen)
            return
        unhit = [ri for ri in range(n) if hit_counts[ri] == 0]
        allowed = best_size - 1 if size_cap is None else min(best_size - 1, size_cap)
        if len(chosen) + _disjoint_ranges_bound(range_sets, unhit) > allowed:
            return
        for x in system.ranges[target]:
            chosen.append(x)
            for ri in point_ranges[x]:
                hit_counts[ri] += 1
            dfs(chosen, hit_counts)
            for ri in point_ranges[x]:
                hit_counts[ri] -= 1
            chosen.pop()

    dfs([], [0] * n)

    if size_cap is not None and best_size > size_cap:
        raise SizeCapExceededError(
            f"no hitting set of size <= {size_cap}; optimum unknown, >= {size_cap + 1}")
    return tuple(best)
