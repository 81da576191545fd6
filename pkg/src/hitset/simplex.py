"""Dense tableau simplex for the packing form ``max c.x : Ax <= b, x >= 0``.

Self-contained on purpose: the covering LPs solved here are desk-scale and a
deterministic solver with no external dependency keeps runs reproducible.

Covering instances are heavily degenerate, and running Bland's rule alone
crawls through tens of thousands of zero-progress pivots whose accumulated
round-off eventually corrupts the tableau.  The solver therefore pivots with
Dantzig's rule (most negative reduced cost, largest-pivot tie-break for
stability) while the objective is moving, and switches to Bland's
smallest-index rule, which cannot cycle, whenever a degenerate stall is
detected.  Every choice is index-deterministic, and an iteration cap turns
any remaining pathology into a hard error instead of a hang.
"""

from __future__ import annotations

import numpy as np

PIVOT_TOL = 1e-9
RATIO_TIE_TOL = 1e-12
OBJ_PROGRESS_TOL = 1e-12


class SimplexError(RuntimeError):
    """Numerical failure inside the solver; never returned silently."""


class UnboundedError(SimplexError):
    """The LP has unbounded objective value."""


def solve_max(a_ub, b_ub, c, max_iters: int | None = None):
    """Maximize ``c @ x`` subject to ``a_ub @ x <= b_ub`` and ``x >= 0``.

    Requires ``b_ub >= 0`` so the all-slack basis is feasible.  Returns
    ``(x, objective, duals)`` where ``duals`` are the reduced costs of the
    slack columns at optimality, i.e. the optimal solution of the dual LP.
    """
    a = np.asarray(a_ub, dtype=float)
    b = np.asarray(b_ub, dtype=float)
    c = np.asarray(c, dtype=float)
    nrows, ncols = a.shape
    if b.shape != (nrows,) or c.shape != (ncols,):
        raise ValueError("inconsistent LP dimensions")
    if np.any(b < 0):
        raise ValueError("b_ub must be nonnegative for the slack basis to be feasible")

    # tableau [A | I | b] with the reduced-cost row (z_j - c_j) at the bottom
    t = np.zeros((nrows + 1, ncols + nrows + 1))
    t[:nrows, :ncols] = a
    t[:nrows, ncols:ncols + nrows] = np.eye(nrows)
    t[:nrows, -1] = b
    t[-1, :ncols] = -c
    basis = np.arange(ncols, ncols + nrows)

    cap = max_iters if max_iters is not None else 200 * (nrows + ncols + 10)
    stall_limit = nrows + 10
    bland = False
    stall = 0
    best_obj = 0.0

    for _ in range(cap):
        red = t[-1, :-1]
        if bland:
            negative = np.flatnonzero(red < -PIVOT_TOL)
            if negative.size == 0:
                break
            enter = int(negative[0])  # smallest index: cannot cycle
        else:
            enter = int(np.argmin(red))  # most negative, ties to lowest index
            if red[enter] >= -PIVOT_TOL:
                break
        col = t[:nrows, enter]
        open_rows = np.flatnonzero(col > PIVOT_TOL)
        if open_rows.size == 0:
            raise UnboundedError("LP is unbounded")
        ratios = t[open_rows, -1] / col[open_rows]
        tied = open_rows[ratios <= ratios.min() + RATIO_TIE_TOL]
        if bland:
            leave = int(tied[np.argmin(basis[tied])])
        else:
            leave = int(tied[np.argmax(col[tied])])  # biggest pivot: least round-off

        pivot_row = t[leave, :] / t[leave, enter]
        factors = t[:, enter].copy()
        t -= np.outer(factors, pivot_row)
        t[leave, :] = pivot_row
        basis[leave] = enter

        obj = t[-1, -1]
        if obj > best_obj + OBJ_PROGRESS_TOL:
            best_obj = obj
            stall = 0
            bland = False
        else:
            stall += 1
            if stall >= stall_limit:
                bland = True
    else:
        raise SimplexError(f"no convergence within {cap} pivots")

    x = np.zeros(ncols + nrows)
    x[basis] = t[:nrows, -1]
    objective = float(t[-1, -1])
    duals = t[-1, ncols:ncols + nrows].copy()
    return x[:ncols], objective, duals
