"""Fractional covering LP for minimum hitting set.

``solve_lp`` computes the optimal fractional cover ``y*`` of
``min 1.y : Ay >= 1, y >= 0`` and converts it to the normalized form used by
the samplers: ``eps* = 1/z*`` and ``mu* = y*/z*``, where ``z* = sum(y*)``.
The normalized weights make every range eps*-heavy, which is exactly the
feasibility condition the net-finder relies on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .setsystem import SetSystem, WeightVector
from .simplex import SimplexError, solve_max

FEAS_TOL = 1e-7


@dataclass(frozen=True)
class LPSolution:
    """Optimal covering solution plus its weighted-net reformulation."""

    z_star: float
    y_star: tuple
    eps_star: float
    mu_star: WeightVector
    status: str = "optimal"

    def range_mass(self, system: SetSystem, range_index: int) -> float:
        return self.mu_star.mass(system.ranges[range_index])


def incidence_matrix(system: SetSystem) -> np.ndarray:
    """Dense 0/1 incidence matrix (ranges x points)."""
    a = np.zeros((system.num_ranges, system.num_points))
    for i, r in enumerate(system.ranges):
        a[i, list(r)] = 1.0
    return a


def solve_lp(system: SetSystem, tol: float = FEAS_TOL) -> LPSolution:
    """Solve the fractional cover exactly (to numerical tolerance).

    Internally maximizes the packing dual ``max 1.x : A^T x <= 1, x >= 0``,
    which is feasible at the origin, and reads the cover ``y*`` off the slack
    reduced costs; strong duality gives ``z* = sum(y*)``.  Empty ranges make
    the cover infeasible and are rejected up front.  Any violation of the
    recovered solution's feasibility is raised, never returned.
    """
    if system.num_ranges == 0:
        raise ValueError("system has no ranges; the LP value would be 0")
    system.require_nonempty_ranges()
    a = incidence_matrix(system)
    m, n = system.num_points, system.num_ranges
    x, objective, duals = solve_max(a.T, np.ones(m), np.ones(n))

    y = np.where(duals > 0.0, duals, 0.0)
    z = float(y.sum())
    if abs(z - objective) > 1e-6 * max(1.0, abs(objective)):
        raise SimplexError(f"duality gap {abs(z - objective):.3e} between cover and packing values")
    cover = a @ y
    worst = float(cover.min())
    if worst < 1.0 - tol:
        raise SimplexError(f"recovered cover violates a constraint by {1.0 - worst:.3e}")
    if z < 1.0 - 1e-9:
        raise SimplexError(f"cover value {z} below 1 on a nonempty instance")

    return LPSolution(
        z_star=z,
        y_star=tuple(float(v) for v in y),
        eps_star=1.0 / z,
        mu_star=WeightVector(y),  # normalization by the sum is exactly y*/z*
    )
