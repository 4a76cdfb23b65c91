"""Min-max objective G, sum objective H, squared objective K and the
level-set sandwich check."""

from dataclasses import dataclass, field

import numpy as np

from .constraints import ConstraintSet, constraint_contains
from .errors import DimensionError, GaugeballError
from .gauge import gauge
from .targets import farthest_projection, farthest_values, nearest_projection, nearest_values
from .timefns import maximal_time, maximal_time_pieces, minimal_time, minimal_time_pieces

OBJECTIVES = ("minmax", "sum")

ACTIVE_TIE = 1e-12


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    dim: int
    dynamics: object
    enclose: tuple = ()
    intersect: tuple = ()
    constraint: ConstraintSet | None = None
    objective: str = "minmax"
    m: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "enclose", tuple(self.enclose))
        object.__setattr__(self, "intersect", tuple(self.intersect))
        if self.constraint is None:
            object.__setattr__(self, "constraint", ConstraintSet.whole(self.dim))
        if self.objective not in OBJECTIVES:
            raise GaugeballError(f"objective must be one of {OBJECTIVES}")
        if not self.enclose and not self.intersect:
            raise GaugeballError("need at least one enclose or intersect target")
        for t in self.enclose + self.intersect:
            if t.dim != self.dim:
                raise DimensionError(f"{t!r} does not match problem dimension {self.dim}")
        if self.dynamics.dim != self.dim or self.constraint.dim != self.dim:
            raise DimensionError("dynamics/constraint dimension mismatch")
        for t in self.enclose:
            if not t.bounded:
                raise GaugeballError(f"enclose target {t!r} must be bounded")
        if self.objective == "sum":
            for t in self.intersect:
                if not t.convex:
                    raise GaugeballError("sum objective needs convex intersect targets")
        object.__setattr__(self, "m", len(self.enclose) + len(self.intersect))


def component_evals(P, x):
    """TimeFnEval for every component, enclose targets first."""
    F = P.dynamics
    return ([maximal_time(F, t, x) for t in P.enclose]
            + [minimal_time(F, t, x) for t in P.intersect])


def eval_G(P, x):
    """Returns ``(value, active_index, subgradient)``."""
    evals = component_evals(P, np.asarray(x, dtype=float))
    vals = np.array([e.value for e in evals])
    k = int(np.argmax(vals >= vals.max() - ACTIVE_TIE))
    return float(vals[k]), k, evals[k].subgradient


def eval_H(P, x):
    """Returns ``(value, subgradient)``."""
    evals = component_evals(P, np.asarray(x, dtype=float))
    return float(sum(e.value for e in evals)), np.sum([e.subgradient for e in evals], axis=0)


def eval_K(P, x):
    return eval_G(P, x)[0] ** 2


def component_values(P, x):
    F = P.dynamics
    return ([farthest_projection(F, t, x).value for t in P.enclose]
            + [nearest_projection(F, t, x).value for t in P.intersect])


def objective_value(P, x):
    """G(x) or H(x) by the instance's objective kind, without subgradients."""
    vals = component_values(P, np.asarray(x, dtype=float))
    return float(max(vals)) if P.objective == "minmax" else float(sum(vals))


def objective_values(P, X):
    """Objective at every row of ``X``."""
    F = P.dynamics
    X = np.atleast_2d(np.asarray(X, dtype=float))
    vals = np.stack([farthest_values(F, t, X) for t in P.enclose]
                    + [nearest_values(F, t, X) for t in P.intersect])
    return vals.max(axis=0) if P.objective == "minmax" else vals.sum(axis=0)


def objective_pieces(P, x, eps):
    """eps-active convex minorants of G at x, pooled over all components."""
    F = P.dynamics
    vals, grads = [], []
    for t in P.enclose:
        v, g = maximal_time_pieces(F, t, x, eps)
        vals.append(v)
        grads.append(g)
    for t in P.intersect:
        v, g = minimal_time_pieces(F, t, x, eps)
        vals.append(v)
        grads.append(g)
    vals = np.concatenate(vals)
    grads = np.vstack(grads)
    keep = vals >= vals.max() - eps
    return vals[keep], grads[keep]


def enclose_samples(P, i, x, extra=0):
    """Finite sample of enclose target i used in the N(I,J,alpha) test: the
    generating points (or the farthest witness) plus ``extra`` random points."""
    from .oracle import sample_points

    t = P.enclose[i]
    F = P.dynamics
    pts = [maximal_time(F, t, x).witness[None, :]]
    if t.vertices() is not None:
        pts.append(t.vertices())
    if extra:
        pts.append(sample_points(t, extra, seed=i))
    return np.vstack(pts)


def level_set_sandwich_check(P, alpha, samples, chain=None):
    """Check V_a c N(I,J,a) c L_a (minmax) or W_a c N(I,J,a) c K_{m a} (sum)
    at every sample point. Returns a report dict with a ``violations`` list."""
    if not alpha > 0:
        raise GaugeballError("alpha must be positive")
    chain = chain or P.objective
    F = P.dynamics
    violations = []
    rows = []
    for x in np.atleast_2d(np.asarray(samples, dtype=float)):
        in_s = constraint_contains(P.constraint, x)
        val = eval_G(P, x)[0] if chain == "minmax" else eval_H(P, x)[0]
        in_v = in_s and val < alpha
        in_n = in_s
        if in_n:
            for i in range(len(P.enclose)):
                q = enclose_samples(P, i, x)
                if max(gauge(F, qq - x) for qq in q) > alpha * (1 + 1e-12):
                    in_n = False
                    break
        if in_n:
            in_n = all(minimal_time(F, t, x).value <= alpha * (1 + 1e-12)
                       for t in P.intersect)
        bound = alpha if chain == "minmax" else P.m * alpha
        in_l = in_s and val <= bound * (1 + 1e-9)
        rows.append((in_v, in_n, in_l))
        if in_v and not in_n:
            violations.append({"x": x.tolist(), "alpha": alpha, "failed": "V->N"})
        if in_n and not in_l:
            violations.append({"x": x.tolist(), "alpha": alpha, "failed": "N->L"})
    return {"alpha": alpha, "chain": chain, "checked": len(rows),
            "flags": rows, "violations": violations}
