"""Command-line surface: generate, solve, verify, stats, bench.

Every subcommand is pure in (inputs, flags, seed): reports are canonical
JSON (sorted keys) or fixed-schema CSV, and all randomness flows from one
``--seed`` through counter-based per-trial generators, so trial ``i`` always
reproduces independently.  ``HITSET_SEED`` overrides the default seed.
Wall-clock fields (``wall_ms``) are the single exception to byte-identical
re-runs.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import baselines, geometry, netfinder, packing
from .instance_io import dumps_canonical, read_instance, write_instance
from .seeds import make_rng
from .lp import solve_lp
from .setsystem import (WeightVector, count_shallow_cells, project,
                        vc_dimension_exact)

DEFAULT_SEED_ENV = "HITSET_SEED"


def _default_seed() -> int:
    return int(os.environ.get(DEFAULT_SEED_ENV, "0"))


def _emit_json(doc: dict, out: str | None):
    text = dumps_canonical(doc)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_phi(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError("--phi expects 'a,b,c'")
    return (float(parts[0]), float(parts[1]), float(parts[2]))


def _resolve_d_phi(args, loaded):
    """VC bound and cell family from flags, falling back to the shape class."""
    kind = loaded.kind
    d = args.d
    if d is None:
        if kind in geometry.VC_BOUNDS:
            d = geometry.VC_BOUNDS[kind]
        else:
            m = loaded.system.num_points
            if m <= 24:
                d = max(1, vc_dimension_exact(loaded.system))
            else:
                raise ValueError("cannot infer a VC bound: pass --d")
    phi = _parse_phi(args.phi) if args.phi else geometry.scc_family(kind if kind else "random", d=d)
    return int(d), phi


def _weights_for(loaded) -> WeightVector:
    if loaded.weights is not None:
        return loaded.weights
    return WeightVector.uniform(loaded.system.num_points)


# ---------------------------------------------------------------- gen

def cmd_gen(args) -> int:
    params = {}
    if args.density is not None:
        params["density"] = args.density
    if args.r_min is not None:
        params["r_min"] = args.r_min
    if args.r_max is not None:
        params["r_max"] = args.r_max
    if args.all_contiguous:
        params["all_contiguous"] = True
    inst = geometry.gen_instance(args.kind, args.m, args.n, _seed_of(args), **params)
    write_instance(args.out, inst.system, geometry=inst)
    return 0


# ---------------------------------------------------------------- solve

def _netfinder_trial(payload):
    system, lp, cfg = payload
    report = netfinder.find_hitting_set(system, cfg, lp=lp)
    return report.to_dict()


def _summary(values: list) -> dict:
    ordered = sorted(values)
    mid = len(ordered) // 2
    median = ordered[mid] if len(ordered) % 2 else (ordered[mid - 1] + ordered[mid]) / 2.0
    return {
        "mean": sum(values) / len(values),
        "median": median,
        "max": max(values),
    }


def _check_run_counts(args):
    if getattr(args, "trials", 1) < 1:
        raise ValueError("--trials must be at least 1")
    if getattr(args, "jobs", 1) < 1:
        raise ValueError("--jobs must be at least 1")


def cmd_solve(args) -> int:
    _check_run_counts(args)
    loaded = read_instance(args.instance)
    system = loaded.system
    seed = _seed_of(args)

    if args.algo == "lp":
        t0 = time.perf_counter()
        sol = solve_lp(system)
        doc = {
            "z_star": sol.z_star,
            "eps_star": sol.eps_star,
            "mu_star": list(sol.mu_star.weights),
            "config": {"algo": "lp", "instance": args.instance},
            "wall_ms": round((time.perf_counter() - t0) * 1000.0, 3),
        }
        _emit_json(doc, args.out)
        return 0

    if args.algo in ("greedy", "exact"):
        t0 = time.perf_counter()
        if args.algo == "greedy":
            hs = baselines.greedy_hitting_set(system)
        else:
            hs = baselines.exact_hitting_set(system, size_cap=args.size_cap)
        wall = round((time.perf_counter() - t0) * 1000.0, 3)
        doc = {
            "algo": args.algo,
            "config": {"algo": args.algo, "instance": args.instance, "size_cap": args.size_cap},
            "hitting_set": list(hs),
            "size": len(hs),
            "valid": baselines.is_hitting_set(system, hs),
            "wall_ms": wall,
        }
        _emit_json(doc, args.out)
        return 0

    # netfinder
    d, phi = _resolve_d_phi(args, loaded)
    lp = solve_lp(system)
    base = netfinder.AlgoConfig(
        d=d, phi=phi, beta=args.beta, gamma=args.gamma, seed=seed,
        prob_scale=args.prob_scale, max_oracle_calls=args.max_oracle_calls)
    payloads = [(system, lp, _cfg_for_trial(base, seed + i)) for i in range(args.trials)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            trials = list(pool.map(_netfinder_trial, payloads))
    else:
        trials = [_netfinder_trial(p) for p in payloads]
    for t in trials:
        t["valid"] = baselines.is_hitting_set(system, t["hitting_set"])
    doc = {
        "algo": "netfinder",
        "config": {
            "algo": "netfinder", "instance": args.instance, "beta": base.beta,
            "gamma": base.gamma, "d": d, "phi": list(phi), "seed": seed,
            "trials": args.trials, "jobs": args.jobs, "prob_scale": base.prob_scale,
            "max_oracle_calls": base.max_oracle_calls,
        },
        "z_star": lp.z_star,
        "eps_star": lp.eps_star,
        "trials": trials,
        "summary": {
            "size": _summary([t["size"] for t in trials]),
            "oracle_calls": _summary([t["oracle_calls"] for t in trials]),
            "all_valid": all(t["valid"] for t in trials),
        },
    }
    _emit_json(doc, args.out)
    return 0


def _cfg_for_trial(base: netfinder.AlgoConfig, trial_seed: int) -> netfinder.AlgoConfig:
    return netfinder.AlgoConfig(
        d=base.d, phi=base.phi, beta=base.beta, gamma=base.gamma, seed=trial_seed,
        prob_scale=base.prob_scale, max_oracle_calls=base.max_oracle_calls)


# ---------------------------------------------------------------- verify

def cmd_verify(args) -> int:
    loaded = read_instance(args.instance)
    system = loaded.system
    w = _weights_for(loaded)
    seed = _seed_of(args)
    doc = {"lemma": args.lemma, "instance": args.instance, "seed": seed}

    if args.lemma == "shallow":
        if args.k is None or args.delta is None:
            raise ValueError("verify --lemma shallow needs --k and --delta")
        d, phi = _resolve_d_phi(args, loaded)
        bound = packing.shallow_packing_bound(d, args.delta, args.k, phi)
        sizes = []
        for i in range(args.trials):
            p = packing.greedy_maximal_packing(system, w, args.k, args.delta, order_seed=seed + i)
            sizes.append(len(p))
        doc.update({
            "k": args.k, "delta": args.delta, "d": d, "phi": list(phi),
            "trials": args.trials, "bound": bound, "max_packing_size": max(sizes),
            "verdict": max(sizes) <= bound,
        })

    elif args.lemma == "packing":
        if args.k is None or args.delta is None:
            raise ValueError("verify --lemma packing needs --k and --delta")
        d, _ = _resolve_d_phi(args, loaded)
        pk = packing.greedy_maximal_packing(system, w, args.k, args.delta, order_seed=seed)
        doc.update({"k": args.k, "delta": args.delta, "d": d, "packing": list(pk.members)})
        try:
            res = packing.monte_carlo_packing_lemma(pk, d, trials=args.trials, seed=seed)
        except ValueError as exc:
            doc.update({"verdict": None, "skipped": True, "reason": str(exc)})
        else:
            doc.update(res)
            doc["verdict"] = res["lhs"] <= 2.0 * (res["mean_proj"] + 3.0 * res["stderr"])

    elif args.lemma in ("edges", "weight"):
        checks = []
        for i in range(args.trials):
            rng = make_rng(seed + i)
            y = [p for p in range(system.num_points) if rng.random() < 0.5]
            proj = project(system, y)
            graph = packing.build_unit_distance_graph(proj)
            d = args.d if args.d is not None else max(1, vc_dimension_exact(proj.traced_system()))
            if args.lemma == "edges":
                checks.append(packing.check_edge_bound(graph, d))
            else:
                checks.append(packing.check_total_weight_bound(graph, d, system.num_ranges))
        doc.update({"trials": args.trials, "verdict": all(checks),
                    "failures": checks.count(False)})
    else:
        raise ValueError(f"unknown lemma {args.lemma!r}")

    _emit_json(doc, args.out)
    return 0


# ---------------------------------------------------------------- stats

def cmd_stats(args) -> int:
    loaded = read_instance(args.instance)
    system = loaded.system
    doc = {"instance": args.instance, "m": system.num_points, "n": system.num_ranges}
    if args.vcdim:
        v = vc_dimension_exact(system, cap=args.cap)
        doc["vc_dim"] = v
        doc["vc_exact"] = args.cap is None or v <= args.cap
    if args.cells:
        if args.l is None or args.k is None:
            raise ValueError("stats --cells needs --l and --k")
        doc["cells"] = {
            "l": args.l, "k": args.k,
            "count": count_shallow_cells(system, loaded.weights, l=args.l, k=args.k,
                                         trials=args.trials, seed=_seed_of(args)),
        }
    _emit_json(doc, args.out)
    return 0


# ---------------------------------------------------------------- bench

def _bench_one(payload):
    system, lp, algo, cfg, size_cap = payload
    t0 = time.perf_counter()
    if algo == "netfinder":
        rep = netfinder.find_hitting_set(system, cfg, lp=lp)
        return len(rep.hitting_set), rep.oracle_calls, time.perf_counter() - t0
    if algo == "greedy":
        hs = baselines.greedy_hitting_set(system)
    elif algo == "exact":
        hs = baselines.exact_hitting_set(system, size_cap=size_cap)
    else:
        raise ValueError(f"unknown bench algo {algo!r}")
    return len(hs), "", time.perf_counter() - t0


OPT_MAX_POINTS = 30  # exact optimum (for the ratio column) only below this


def cmd_bench(args) -> int:
    _check_run_counts(args)
    loaded = read_instance(args.instance)
    system = loaded.system
    seed = _seed_of(args)
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in ("netfinder", "greedy", "exact"):
            raise ValueError(f"unknown bench algo {a!r}")

    lp = solve_lp(system)
    opt = None
    if system.num_points <= OPT_MAX_POINTS:
        opt = len(baselines.exact_hitting_set(system))

    d = phi = None
    if "netfinder" in algos:
        d, phi = _resolve_d_phi(args, loaded)

    payloads, meta = [], []
    for algo in algos:
        for i in range(args.trials):
            trial_seed = seed + i
            cfg = None
            if algo == "netfinder":
                cfg = netfinder.AlgoConfig(
                    d=d, phi=phi, beta=args.beta, gamma=args.gamma, seed=trial_seed,
                    prob_scale=args.prob_scale, max_oracle_calls=args.max_oracle_calls)
            payloads.append((system, lp, algo, cfg, args.size_cap))
            meta.append((trial_seed, algo))

    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_bench_one, payloads))
    else:
        results = [_bench_one(p) for p in payloads]

    rows = []
    for (trial_seed, algo), (size, calls, wall) in zip(meta, results):
        row = {
            "seed": trial_seed, "algo": algo, "H": size, "T": calls,
            "z_star": lp.z_star, "wall_ms": round(wall * 1000.0, 3),
        }
        if opt is not None:
            row["ratio"] = size / opt
        rows.append(row)

    fields = ["seed", "algo", "H", "T", "z_star", "wall_ms"] + (["ratio"] if opt is not None else [])
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(buf.getvalue())

    if not args.no_figures:
        from .figures import render_bench_figures
        render_bench_figures(rows, args.out)
    return 0


# ---------------------------------------------------------------- parser

def _seed_of(args) -> int:
    return args.seed if args.seed is not None else _default_seed()


def _add_netfinder_flags(p):
    p.add_argument("--beta", type=float, default=0.75)
    p.add_argument("--gamma", type=float, default=0.01)
    p.add_argument("--d", type=int, default=None, help="VC bound (default: from the shape class)")
    p.add_argument("--phi", type=str, default=None, metavar="a,b,c",
                   help="cell family c*l^a*k^b (default: from the shape class)")
    p.add_argument("--prob-scale", type=float, default=1.0, dest="prob_scale")
    p.add_argument("--max-oracle-calls", type=int, default=None, dest="max_oracle_calls")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hitset",
                                 description="LP-guided sampling for geometric minimum hitting set")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a seeded instance file")
    g.add_argument("kind", choices=geometry.KINDS)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--n", type=int, default=1)
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--density", type=float, default=None, help="random class membership density")
    g.add_argument("--r-min", type=float, default=None, dest="r_min")
    g.add_argument("--r-max", type=float, default=None, dest="r_max")
    g.add_argument("--all-contiguous", action="store_true", dest="all_contiguous",
                   help="intervals: emit every contiguous interval (ignores --n)")
    g.add_argument("-o", "--out", required=True)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="solve an instance")
    s.add_argument("instance")
    s.add_argument("--algo", choices=("netfinder", "greedy", "exact", "lp"), required=True)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--trials", type=int, default=1)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--size-cap", type=int, default=None, dest="size_cap")
    _add_netfinder_flags(s)
    s.add_argument("-o", "--out", default=None)
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a packing/graph bound on an instance")
    v.add_argument("instance")
    v.add_argument("--lemma", choices=("shallow", "packing", "edges", "weight"), required=True)
    v.add_argument("--k", type=float, default=None)
    v.add_argument("--delta", type=float, default=None)
    v.add_argument("--d", type=int, default=None)
    v.add_argument("--phi", type=str, default=None)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("-o", "--out", default=None)
    v.set_defaults(func=cmd_verify)

    st = sub.add_parser("stats", help="instance statistics")
    st.add_argument("instance")
    st.add_argument("--vcdim", action="store_true")
    st.add_argument("--cap", type=int, default=None)
    st.add_argument("--cells", action="store_true")
    st.add_argument("--l", type=int, default=None)
    st.add_argument("--k", type=int, default=None)
    st.add_argument("--trials", type=int, default=64)
    st.add_argument("--seed", type=int, default=None)
    st.add_argument("-o", "--out", default=None)
    st.set_defaults(func=cmd_stats)

    b = sub.add_parser("bench", help="benchmark solvers over consecutive seeds")
    b.add_argument("instance")
    b.add_argument("--algos", default="netfinder,greedy,exact")
    b.add_argument("--seed", type=int, default=None)
    b.add_argument("--trials", type=int, default=10)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--size-cap", type=int, default=None, dest="size_cap")
    _add_netfinder_flags(b)
    b.add_argument("--no-figures", action="store_true", dest="no_figures",
                   help="skip the matplotlib figures next to the CSV")
    b.add_argument("-o", "--out", required=True)
    b.set_defaults(func=cmd_bench)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
