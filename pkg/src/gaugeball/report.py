"""Benchmark table over the instance suite, with an optional figure."""

import csv
import io
import time

from .instances import benchmark_suite
from .oracle import grid_minimize
from .solver import SolverConfig, minimize

COLUMNS = ["instance", "objective", "dynamics", "solver_value", "oracle_value", "gap"]


def run_bench(seed=0, generated=20, timing=False, cfg=None):
    """Solve every suite instance and its grid oracle; one dict per row."""
    cfg = cfg or SolverConfig(seed=seed)
    rows = []
    for name, P in benchmark_suite(seed, generated).items():
        t0 = time.perf_counter()
        sol = minimize(P, cfg)
        orc = grid_minimize(P)
        row = {"instance": name, "objective": P.objective, "dynamics": P.dynamics.kind,
               "solver_value": sol.value, "oracle_value": orc.value,
               "gap": orc.value - sol.value}
        if timing:
            row["millis"] = round(1000 * (time.perf_counter() - t0), 1)
        rows.append(row)
    return rows


def to_csv(rows):
    cols = COLUMNS + (["millis"] if rows and "millis" in rows[0] else [])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow([repr(r[c]) if isinstance(r[c], float) else r[c] for c in cols])
    return buf.getvalue()


def plot_gaps(rows, path, tol=1e-3):
    """Bar chart of |oracle - solver| per instance on a log axis."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    names = [r["instance"] for r in rows]
    gaps = [max(abs(r["gap"]), 1e-16) for r in rows]
    with matplotlib.rc_context({"svg.hashsalt": "gaugeball", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(8, 3.5))
        ax.bar(range(len(rows)), gaps, color="#1f5fa8")
        ax.axhline(tol, color="#b0243a", lw=1, ls="--", label=f"tolerance {tol:g}")
        ax.set_yscale("log")
        ax.set_xticks(range(len(rows)))
        ax.set_xticklabels(names, rotation=70, fontsize=7)
        ax.set_ylabel("oracle - solver")
        ax.legend(fontsize=8)
        fig.tight_layout()
        fig.savefig(path, metadata={"Date": None})
        plt.close(fig)
