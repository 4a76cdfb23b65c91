"""Command-line front end.

Exit codes: 0 success, 1 other failure (including sandwich violations in
``check``), 2 schema / input error, 3 unsupported kind combination,
4 solver did not converge.
"""

import argparse
import json
import os
import sys

import numpy as np

from .errors import DimensionError, SchemaError, UnsupportedCombination
from .objectives import component_evals, objective_value
from .oracle import GridSpec, grid_minimize, instance_box
from .serialize import dumps, load_problem
from .solver import SolverConfig, existence_check, minimize, start_points, uniqueness_check

EXIT_SCHEMA = 2
EXIT_UNSUPPORTED = 3
EXIT_NOT_CONVERGED = 4

CHECK_ALPHAS = (0.5, 1.0, 2.0)


def default_seed():
    return int(os.environ.get("GAUGEBALL_SEED", "0"))


def _load(path):
    """Parse a problem file and probe one evaluation so unsupported
    (dynamics, target) pairs fail up front."""
    try:
        P = load_problem(path)
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e.strerror}") from None
    lo, hi = instance_box(P)
    objective_value(P, 0.5 * (lo + hi))
    return P


def _config(args):
    seed = default_seed() if args.seed is None else args.seed
    kw = {"seed": seed}
    if args.max_iters is not None:
        kw["max_iters"] = args.max_iters
    if args.restarts is not None:
        kw["restarts"] = args.restarts
    if args.step_c is not None:
        kw.update(step_rule="diminishing", step_c=args.step_c)
    if args.polyak is not None:
        kw.update(step_rule="polyak", polyak_target=args.polyak)
    return SolverConfig(**kw)


def cmd_solve(args):
    P = _load(args.problem)
    sol = minimize(P, _config(args))
    out = sol.to_dict()
    if args.oracle_check:
        orc = grid_minimize(P)
        out["oracle"] = orc.to_dict()
        out["oracle_gap"] = orc.value - sol.value
    sys.stdout.write(dumps(out))
    return 0 if sol.converged else EXIT_NOT_CONVERGED


def cmd_eval(args):
    P = _load(args.problem)
    x = np.array(args.at, dtype=float)
    if x.shape != (P.dim,):
        raise SchemaError(f"--at needs {P.dim} coordinates")
    evals = component_evals(P, x)
    out = {
        "x": x.tolist(),
        "objective": P.objective,
        "value": objective_value(P, x),
        "enclose": [e.to_dict() for e in evals[:len(P.enclose)]],
        "intersect": [e.to_dict() for e in evals[len(P.enclose):]],
    }
    sys.stdout.write(dumps(out))
    return 0


def cmd_oracle(args):
    P = _load(args.problem)
    lo, hi = instance_box(P)
    res = grid_minimize(P, GridSpec(lo, hi, args.resolution, args.levels))
    sys.stdout.write(dumps(res.to_dict()))
    return 0


def cmd_check(args):
    from .objectives import level_set_sandwich_check

    P = _load(args.problem)
    seed = default_seed() if args.seed is None else args.seed
    x0 = start_points(P, SolverConfig(seed=seed, restarts=1))[0]
    base = objective_value(P, x0)
    lo, hi = instance_box(P)
    rng = np.random.default_rng(seed)
    samples = rng.uniform(lo, hi, size=(args.samples, P.dim))
    sandwich = []
    for a in CHECK_ALPHAS:
        alpha = a * base if base > 0 else a
        rep = level_set_sandwich_check(P, alpha, samples)
        sandwich.append({"alpha": alpha, "checked": rep["checked"],
                         "violations": rep["violations"]})
    bad = sum(len(s["violations"]) for s in sandwich)
    out = {"existence": existence_check(P), "uniqueness": uniqueness_check(P),
           "sandwich": sandwich, "violations": bad}
    sys.stdout.write(dumps(out))
    return 0 if bad == 0 else 1


def cmd_render(args):
    from .render import render_svg

    P = _load(args.problem)
    if P.dim != 2:
        print(f"error: render needs a 2D instance, got dim {P.dim}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    try:
        with open(args.solution) as fh:
            sol = json.load(fh)
        center, value = sol["center"], float(sol["value"])
    except (OSError, ValueError, KeyError) as e:
        print(f"error: cannot use solution file {args.solution}: {e}", file=sys.stderr)
        return 1
    with open(args.out, "w") as fh:
        fh.write(render_svg(P, center, value))
    return 0


def cmd_bench(args):
    from .report import plot_gaps, run_bench, to_csv

    seed = default_seed() if args.seed is None else args.seed
    rows = run_bench(seed, args.generated, timing=args.timing)
    text = to_csv(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.figure:
        plot_gaps(rows, args.figure)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="gaugeball",
        description="Smallest enclosing/intersecting gauge balls and their sum variants.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="minimize the instance objective")
    p.add_argument("problem")
    p.add_argument("--max-iters", type=int)
    p.add_argument("--restarts", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--step-c", type=float, help="diminishing steps c/sqrt(k)")
    p.add_argument("--polyak", type=float, metavar="V", help="Polyak steps toward value V")
    p.add_argument("--oracle-check", action="store_true",
                   help="also run the grid oracle and report the gap")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("eval", help="evaluate every time function at a point")
    p.add_argument("problem")
    p.add_argument("--at", type=float, nargs="+", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("oracle", help="grid-search the objective")
    p.add_argument("problem")
    p.add_argument("--resolution", type=int, default=64)
    p.add_argument("--levels", type=int, default=4)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("check", help="existence, uniqueness and level-set checks")
    p.add_argument("problem")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("render", help="draw a 2D instance and solution as SVG")
    p.add_argument("problem")
    p.add_argument("solution")
    p.add_argument("out")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("bench", help="solver vs oracle over the instance suite, as CSV")
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--seed", type=int)
    p.add_argument("--generated", type=int, default=20)
    p.add_argument("--timing", action="store_true", help="add a wall-clock millis column")
    p.add_argument("--figure", help="also write a gap chart (SVG/PNG by extension)")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SCHEMA
    except (UnsupportedCombination, DimensionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())
