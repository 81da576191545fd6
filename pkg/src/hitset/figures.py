"""Matplotlib rendering for bench reports, written beside the CSV."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=140)
    plt.close(fig)
    return path


def render_bench_figures(rows: list, csv_path: str) -> list:
    """Render the size / oracle-call / ratio distributions of a bench run.

    ``rows`` are the bench CSV rows as dicts.  Figures land next to the CSV
    (same stem); only the ones with data are produced.  Returns the paths.
    """
    stem = os.path.splitext(csv_path)[0]
    written = []

    algos = sorted({r["algo"] for r in rows})
    sizes = {a: [r["H"] for r in rows if r["algo"] == a] for a in algos}
    if any(sizes.values()):
        fig, ax = plt.subplots(figsize=(6, 4))
        lo = min(min(v) for v in sizes.values())
        hi = max(max(v) for v in sizes.values())
        bins = [x - 0.5 for x in range(lo, hi + 2)]
        for a in algos:
            ax.hist(sizes[a], bins=bins, alpha=0.6, label=a)
        ax.set_xlabel("hitting set size")
        ax.set_ylabel("runs")
        ax.legend()
        ax.set_title("solution sizes")
        written.append(_save(fig, stem + "_sizes.png"))

    calls = [r["T"] for r in rows if r["algo"] == "netfinder" and r["T"] != ""]
    if calls:
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.hist(calls, bins=max(1, min(30, max(calls) - min(calls) + 1)))
        ax.set_xlabel("oracle calls")
        ax.set_ylabel("runs")
        ax.set_title("net-finder oracle calls")
        written.append(_save(fig, stem + "_oracle_calls.png"))

    ratios = {a: [r["ratio"] for r in rows if r["algo"] == a and r.get("ratio") not in (None, "")]
              for a in algos}
    if any(ratios.values()):
        fig, ax = plt.subplots(figsize=(6, 4))
        for a in algos:
            if ratios[a]:
                ax.hist(ratios[a], bins=20, alpha=0.6, label=a)
        ax.set_xlabel("size / optimum")
        ax.set_ylabel("runs")
        ax.legend()
        ax.set_title("approximation ratios")
        written.append(_save(fig, stem + "_ratio.png"))

    return written
