"""LP-guided weighted net-finder for minimum hitting set.

One run is: solve the covering LP, take a single independent sample over all
points with probabilities proportional to the normalized LP weights, then,
while some range is unhit, resample inside that range.  The loop always
terminates with a verified hitting set; the randomness is only in its size
and in the number of oracle calls.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .geometry import eval_phi
from .lp import LPSolution, solve_lp
from .seeds import make_rng
from .setsystem import SetSystem, WeightVector

_E = math.e


class OracleCapError(RuntimeError):
    """Safety cap on oracle calls exceeded; the run is reported as failed."""


class ZeroWeightRangeError(RuntimeError):
    """An unhit range carries no LP weight, so resampling cannot normalize.

    The LP guarantees every nonempty range a mass of at least eps*, so this
    only happens on inputs that bypassed the LP invariants.
    """


@dataclass(frozen=True)
class AlgoConfig:
    """Sampler constants.  Defaults are the recommended beta=3/4, gamma=1/100.

    ``phi`` is the shallow-cell family ``(a, b, c)``; ``d`` the VC bound.
    ``prob_scale`` multiplies both sampling multipliers (1.0 reproduces the
    algorithm verbatim; smaller values study behavior below the min{1, .}
    saturation).  ``max_oracle_calls=None`` derives a runaway guard of
    ``10 * ceil(oracle_call_budget(...))`` once the LP value is known.
    """

    d: int
    phi: tuple
    beta: float = 0.75
    gamma: float = 0.01
    seed: int = 0
    prob_scale: float = 1.0
    max_oracle_calls: int | None = None

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be a positive integer")
        if len(self.phi) != 3:
            raise ValueError("phi must be an (a, b, c) triple")
        if not self.beta > 0:
            raise ValueError("beta must be positive")
        if not 0 < self.gamma <= 0.25:
            raise ValueError("gamma must lie in (0, 1/4]")
        if self.beta + self.gamma > 1:
            raise ValueError("beta + gamma must be at most 1")
        if not self.prob_scale > 0:
            raise ValueError("prob_scale must be positive")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")


@dataclass(frozen=True)
class RunReport:
    """One completed run: the set itself plus how the loop got there."""

    hitting_set: tuple
    oracle_calls: int
    initial_sample_size: int
    added_per_call: tuple
    rng_seed: int
    wall_time: float

    def to_dict(self) -> dict:
        return {
            "hitting_set": list(self.hitting_set),
            "size": len(self.hitting_set),
            "oracle_calls": self.oracle_calls,
            "initial_sample_size": self.initial_sample_size,
            "added_per_call": list(self.added_per_call),
            "rng_seed": self.rng_seed,
            "wall_ms": round(self.wall_time * 1000.0, 3),
        }


def oracle_call_budget(beta: float, gamma: float, z_star: float) -> float:
    """Bound on the expected number of oracle calls: 24*48/(beta*(3/2-beta-gamma)) * z*."""
    return 24.0 * 48.0 / (beta * (1.5 - beta - gamma)) * z_star


def initial_probabilities(system: SetSystem, lp: LPSolution, cfg: AlgoConfig) -> np.ndarray:
    """Per-point inclusion probabilities of the opening sample.

    min{1, scale * 2 mu*_j / ((3/4 - beta/2) eps*) * max{log(d^2 phi(8d/(beta eps*), 48d/beta)^2),
    d log(1/((3/4 - beta/2) eps*))}} with log arguments clamped to at least e,
    so the multiplier never drops below 1 on small instances.
    """
    eps = lp.eps_star
    d = cfg.d
    slack = 0.75 - cfg.beta / 2.0
    phi_val = eval_phi(cfg.phi, 8.0 * d / (cfg.beta * eps), 48.0 * d / cfg.beta)
    big = max(
        math.log(max(_E, d * d * phi_val * phi_val)),
        d * math.log(max(_E, 1.0 / (slack * eps))),
    )
    mu = lp.mu_star.as_array()
    return np.minimum(1.0, cfg.prob_scale * (2.0 * mu / (slack * eps)) * big)


def initial_sample(system: SetSystem, lp: LPSolution, cfg: AlgoConfig,
                   rng: np.random.Generator | None = None) -> tuple:
    """One independent Bernoulli pass over all points (the opening sample)."""
    if rng is None:
        rng = make_rng(cfg.seed)
    probs = initial_probabilities(system, lp, cfg)
    u = rng.random(system.num_points)
    return tuple(int(j) for j in np.nonzero(u < probs)[0])


def resample_set(system: SetSystem, lp: LPSolution, cfg: AlgoConfig,
                 range_index: int, rng: np.random.Generator) -> tuple:
    """Independent Bernoulli pass over the members of one (unhit) range.

    Member j is added with probability
    min{1, scale * 2 mu*_j / (gamma mu*(R)) * max{log 2, d log(1/gamma)}};
    the result may well be empty, in which case the caller's loop simply
    revisits the range.
    """
    r = system.ranges[range_index]
    mu = lp.mu_star
    mass = mu.mass(r)
    if mass <= 0.0:
        raise ZeroWeightRangeError(f"zero-weight unhit range {range_index}")
    mult = max(math.log(2.0), cfg.d * math.log(1.0 / cfg.gamma))
    scale = cfg.prob_scale * 2.0 * mult / (cfg.gamma * mass)
    u = rng.random(len(r))
    return tuple(x for x, ux in zip(r, u) if ux < min(1.0, scale * mu[x]))


class HitTracker:
    """Incremental unhit-range oracle.

    Keeps a per-range counter of chosen members, so point insertions cost
    O(ranges containing it) and the lowest-index unhit query is served by a
    cursor that only ever moves forward (the hit set only grows).
    """

    def __init__(self, system: SetSystem, initial=()):
        self._system = system
        self._counts = [0] * system.num_ranges
        self._members = set()
        self._cursor = 0
        for x in initial:
            self.add_point(x)

    def add_point(self, x: int):
        if x in self._members:
            return
        self._members.add(x)
        for ri in self._system.point_ranges[x]:
            self._counts[ri] += 1

    def first_unhit(self) -> int | None:
        counts = self._counts
        n = len(counts)
        while self._cursor < n and counts[self._cursor] > 0:
            self._cursor += 1
        return self._cursor if self._cursor < n else None


def unhit_oracle(system: SetSystem, candidate) -> int | None:
    """Lowest-index range disjoint from ``candidate``, or None if all are hit."""
    return HitTracker(system, candidate).first_unhit()


def find_hitting_set(system: SetSystem, cfg: AlgoConfig,
                     lp: LPSolution | None = None) -> RunReport:
    """Run the full sampler and return a verified hitting set.

    ``lp`` may be passed in to share one LP solve across many seeded runs.
    Raises on empty ranges (infeasible), on a zero-weight unhit range, and
    when the oracle-call cap is exceeded.
    """
    t0 = time.perf_counter()
    system.require_nonempty_ranges()
    if lp is None:
        lp = solve_lp(system)
    rng = make_rng(cfg.seed)

    h = set(initial_sample(system, lp, cfg, rng))
    initial_size = len(h)
    tracker = HitTracker(system, h)

    cap = cfg.max_oracle_calls
    if cap is None:
        cap = 10 * math.ceil(oracle_call_budget(cfg.beta, cfg.gamma, lp.z_star))

    added_per_call = []
    while True:
        target = tracker.first_unhit()
        if target is None:
            break
        if len(added_per_call) >= cap:
            raise OracleCapError(f"exceeded {cap} oracle calls (z*={lp.z_star:.3f})")
        fresh = [x for x in resample_set(system, lp, cfg, target, rng) if x not in h]
        for x in fresh:
            h.add(x)
            tracker.add_point(x)
        added_per_call.append(len(fresh))

    for ri, rs in enumerate(system.range_sets):  # paranoia: verify before returning
        if h.isdisjoint(rs):
            raise RuntimeError(f"internal error: range {ri} left unhit")

    return RunReport(
        hitting_set=tuple(sorted(h)),
        oracle_calls=len(added_per_call),
        initial_sample_size=initial_size,
        added_per_call=tuple(added_per_call),
        rng_seed=cfg.seed,
        wall_time=time.perf_counter() - t0,
    )


def sample_epsilon_net(system: SetSystem, w: WeightVector, eps: float,
                       gamma: float, d: int, seed: int) -> tuple:
    """One-shot weighted net sampler; succeeds with probability >= 1 - gamma.

    Each point is kept with probability
    min{1, (2 mu(x)/eps) max{log(1/gamma), d log(1/eps)}}.  No validity
    check is performed here; pair with :func:`is_epsilon_net`.
    """
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    if not 0 < gamma < 1:
        raise ValueError("gamma must lie in (0, 1)")
    if d < 1:
        raise ValueError("d must be a positive integer")
    if len(w) != system.num_points:
        raise ValueError("weight vector does not match the system")
    mult = max(math.log(1.0 / gamma), d * math.log(1.0 / eps))
    probs = np.minimum(1.0, (2.0 * w.as_array() / eps) * mult)
    u = make_rng(seed).random(system.num_points)
    return tuple(int(j) for j in np.nonzero(u < probs)[0])


def is_epsilon_net(system: SetSystem, w: WeightVector, eps: float, candidate) -> bool:
    """True iff every range of mass >= eps * mu(X) meets ``candidate``."""
    if len(w) != system.num_points:
        raise ValueError("weight vector does not match the system")
    h = set(candidate)
    threshold = eps * sum(w.weights) - 1e-12
    for rs in system.range_sets:
        if w.mass(rs) >= threshold and h.isdisjoint(rs):
            return False
    return True
