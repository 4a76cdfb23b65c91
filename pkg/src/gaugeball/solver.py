"""Projected subgradient solver with multi-start, solution certificates and
the existence / uniqueness checks."""

from dataclasses import dataclass, field

import numpy as np

from .constraints import project_constraint
from .errors import GaugeballError
from .gauge import gauge
from .objectives import (
    enclose_samples,
    eval_G,
    eval_H,
    objective_pieces,
    objective_value,
)
from .oracle import instance_box, sample_points
from .polyhedra import min_norm_point
from .targets import euclidean_distance, membership
from .timefns import minimal_time

STEP_RULES = ("adaptive", "diminishing", "polyak")

# restarts this close in value are compared for the flat-valley test
FLAT_VALUE_TOL = 1e-8
FLAT_SPREAD_TOL = 1e-3


@dataclass
class SolverConfig:
    max_iters: int = 5000
    step_rule: str = "adaptive"
    step_c: float = 1.0
    polyak_target: float | None = None
    stop_tol: float = 1e-9
    window: int = 200
    restarts: int = 8
    seed: int = 0
    patience: int = 10

    def __post_init__(self):
        if self.max_iters < 1:
            raise GaugeballError("max_iters must be >= 1")
        if self.step_rule not in STEP_RULES:
            raise GaugeballError(f"step_rule must be one of {STEP_RULES}")
        if not self.step_c > 0:
            raise GaugeballError("step constant must be positive")
        if self.step_rule == "polyak" and self.polyak_target is None:
            raise GaugeballError("polyak step rule needs a target value")
        if self.restarts < 1:
            raise GaugeballError("need at least one restart")


@dataclass
class SylvesterCertificate:
    radius: float
    enclosure_margins: list
    intersection_margins: list

    @property
    def max_margin(self):
        return max(self.enclosure_margins + self.intersection_margins, default=-np.inf)

    def to_dict(self):
        return {"radius": self.radius, "enclosure_margins": self.enclosure_margins,
                "intersection_margins": self.intersection_margins}


@dataclass
class Solution:
    center: np.ndarray
    value: float
    objective: str
    iterations_used: int
    converged: bool
    certificate: SylvesterCertificate | None
    starts: list
    restart_centers: list
    likely_non_unique: bool = False
    existence_verified: bool = True
    trace: list = field(default_factory=list, repr=False)

    @property
    def flags(self):
        out = []
        if self.likely_non_unique:
            out.append("likely non-unique")
        if not self.converged:
            out.append("not converged")
        if not self.existence_verified:
            out.append("unverified existence")
        return out

    def to_dict(self):
        return {
            "center": self.center.tolist(),
            "value": self.value,
            "objective": self.objective,
            "iterations_used": self.iterations_used,
            "converged": self.converged,
            "likely_non_unique": self.likely_non_unique,
            "existence_verified": self.existence_verified,
            "flags": self.flags,
            "starts": self.starts,
            "restart_centers": [c.tolist() for c in self.restart_centers],
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
        }


def _direction(P, x, gap, cfg):
    if P.objective == "sum":
        return eval_H(P, x)
    if cfg.step_rule == "adaptive":
        vals, grads = objective_pieces(P, x, gap)
        d, _ = min_norm_point(grads)
        return float(vals.max()), d
    f, _, g = eval_G(P, x)
    return f, g


def _descend(P, x0, cfg):
    """One restart. Returns (best_x, best_value, iterations, converged, trace)."""
    S = P.constraint
    x = project_constraint(S, x0)
    best_x, best = x, objective_value(P, x)
    trace = []
    gap = max(0.5 * best, cfg.stop_tol)
    stall = 0
    converged = False
    k = 0
    for k in range(1, cfg.max_iters + 1):
        f, d = _direction(P, x, gap, cfg)
        if f < best:
            best, best_x, stall = f, x, 0
        else:
            stall += 1
        trace.append(best)
        if best == 0.0:
            converged = True
            break
        if (k > cfg.window and trace[-cfg.window - 1] - best < cfg.stop_tol
                and (cfg.step_rule != "adaptive" or gap < cfg.stop_tol)):
            converged = True
            break
        dd = float(d @ d)
        if cfg.step_rule == "adaptive":
            if stall >= cfg.patience or dd < 1e-30:
                gap *= 0.5
                stall = 0
                x = best_x
                continue
            t = (f - best + gap) / dd
        elif cfg.step_rule == "diminishing":
            if dd == 0.0:
                converged = True
                break
            t = cfg.step_c / np.sqrt(k)
        else:
            if dd == 0.0 or f <= cfg.polyak_target:
                converged = True
                break
            t = (f - cfg.polyak_target) / dd
        x = project_constraint(S, x - t * d)
    return best_x, float(best), k, converged, trace


def start_points(P, cfg):
    lo, hi = instance_box(P)
    out = []
    for r in range(cfg.restarts):
        rng = np.random.default_rng(cfg.seed + r)
        out.append(project_constraint(P.constraint, rng.uniform(lo, hi)))
    return out


def certificate(P, x, r, extra=64):
    F = P.dynamics
    enc = []
    for i in range(len(P.enclose)):
        q = np.vstack([enclose_samples(P, i, x),
                       sample_points(P.enclose[i], extra, seed=1000 + i)])
        enc.append(max(gauge(F, qq - x) for qq in q) - r)
    inter = [minimal_time(F, t, x).value - r for t in P.intersect]
    return SylvesterCertificate(r, [float(v) for v in enc], [float(v) for v in inter])


def minimize(P, cfg=None):
    """Minimize G (minmax) or H (sum) over the constraint set."""
    cfg = cfg or SolverConfig()
    results = [_descend(P, x0, cfg) for x0 in start_points(P, cfg)]
    values = [r[1] for r in results]
    # min value, smallest restart index on ties
    k = int(np.argmin(values))
    x, value, _, converged, trace = results[k]
    centers = [r[0] for r in results]
    close = [c for c, v in zip(centers, values) if v <= value + FLAT_VALUE_TOL]
    spread = max((np.linalg.norm(a - b) for a in close for b in close), default=0.0)
    return Solution(
        center=x,
        value=value,
        objective=P.objective,
        iterations_used=int(sum(r[2] for r in results)),
        converged=converged,
        certificate=certificate(P, x, value) if P.objective == "minmax" else None,
        starts=values,
        restart_centers=centers,
        likely_non_unique=bool(spread > FLAT_SPREAD_TOL),
        existence_verified=existence_check(P)["holds"],
        trace=trace,
    )


def existence_check(P):
    """Which finite-dimensional sufficient condition for a minimizer holds."""
    conds, reasons = [], []
    if P.constraint.compact:
        conds.append("i")
        reasons.append("(i) constraint set is compact")
    if P.enclose:
        conds.append("ii")
        reasons.append("(ii) enclose index set is nonempty")
    if P.intersect and any(t.bounded for t in P.intersect):
        conds.append("iii")
        reasons.append("(iii) some intersect target is compact")
    if not conds:
        reasons.append("constraint unbounded, no enclose targets, all intersect targets unbounded")
    return {"holds": bool(conds), "conditions": conds, "reasons": reasons}


def _disjoint(P, t1, t2):
    if t1.kind == "euclidean_ball":
        return euclidean_distance(t2, t1.center) > t1.radius + 1e-12
    if t1.kind == "extended_ball":
        return minimal_time(P.dynamics, t2, t1.center).value > t1.radius + 1e-12
    if t1.is_singleton:
        return not membership(t2, t1.singleton_point(), 1e-12)
    return False


def _common_points(P, count=64):
    """Distinct sampled points lying in every intersect target and in S."""
    lo, hi = instance_box(P)
    mid = 0.5 * (lo + hi)
    found = []
    for j, t in enumerate(P.intersect):
        for q in sample_points(t, count, seed=j, around=mid):
            if (all(membership(u, q, 1e-12) for u in P.intersect)
                    and np.linalg.norm(project_constraint(P.constraint, q) - q) <= 1e-12):
                if all(np.linalg.norm(q - f) > 1e-9 for f in found):
                    found.append(q)
            if len(found) >= 2:
                return found
    return found


def uniqueness_check(P):
    """Whether the known uniqueness conditions guarantee at most one minimizer.

    status is "unique-capable", "not-unique-capable" (a hypothesis is known to
    fail) or "indeterminate" (a hypothesis could not be decided).
    """
    F = P.dynamics
    reasons = []
    if P.objective == "minmax":
        if not P.enclose:
            singles = all(t.is_singleton for t in P.intersect)
            disjoint = any(_disjoint(P, a, b) or _disjoint(P, b, a)
                           for i, a in enumerate(P.intersect)
                           for b in P.intersect[i + 1:])
            if not (singles or disjoint) and len(_common_points(P)) >= 2:
                return {"objective": "minmax", "status": "not-unique-capable",
                        "condition": None,
                        "reasons": ["enclose set empty and the intersect targets share "
                                    "more than one feasible point (zero-value minimizers)"]}
        if not F.strictly_convex:
            return {"objective": "minmax", "status": "not-unique-capable", "condition": None,
                    "reasons": ["dynamics set is not strictly convex"]}
        bad = [j for j, t in enumerate(P.intersect) if not t.strictly_convex]
        if bad:
            return {"objective": "minmax", "status": "not-unique-capable", "condition": None,
                    "reasons": [f"intersect targets {bad} are not strictly convex"]}
        if P.enclose:
            return {"objective": "minmax", "status": "unique-capable", "condition": "2",
                    "reasons": ["enclose index set is nonempty"]}
        if singles:
            reasons.append("all intersect targets are singletons")
        elif disjoint:
            reasons.append("two intersect targets are disjoint")
        if reasons:
            return {"objective": "minmax", "status": "unique-capable", "condition": "1",
                    "reasons": reasons}
        return {"objective": "minmax", "status": "indeterminate", "condition": None,
                "reasons": ["could not decide whether the intersect targets meet S in "
                            "at most one point"]}

    if not F.strictly_convex:
        return {"objective": "sum", "status": "not-unique-capable", "condition": None,
                "reasons": ["dynamics set is not strictly convex"]}
    bad = [j for j, t in enumerate(P.intersect) if not t.strictly_convex]
    if bad:
        return {"objective": "sum", "status": "not-unique-capable", "condition": None,
                "reasons": [f"intersect targets {bad} are not strictly convex"]}
    targets = P.enclose + P.intersect
    if all(t.is_singleton for t in targets):
        pts = np.array([t.singleton_point() for t in targets])
        if np.linalg.matrix_rank(pts - pts[0], tol=1e-9) <= 1:
            return {"objective": "sum", "status": "not-unique-capable", "condition": None,
                    "reasons": ["singleton targets are collinear"]}
        return {"objective": "sum", "status": "unique-capable", "condition": "non-collinear",
                "reasons": ["singleton targets are not collinear"]}
    return {"objective": "sum", "status": "indeterminate", "condition": None,
            "reasons": ["line-avoidance hypothesis (every line through two feasible points "
                        "misses some target) is not decidable for these target kinds"]}
