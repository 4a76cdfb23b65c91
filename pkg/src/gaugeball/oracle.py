"""Brute-force ground truth: refining grid search over the objective and
sampling-based bounds on the time functions."""

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import polyhedra
from .constraints import project_constraint, project_constraint_rows
from .errors import GaugeballError
from .gauge import boundary_point, gauge
from .objectives import objective_values
from .targets import euclidean_projection


@dataclass
class GridSpec:
    lo: np.ndarray
    hi: np.ndarray
    resolution: int = 64
    levels: int = 4
    zoom: float = 4.0

    def __post_init__(self):
        self.lo = np.asarray(self.lo, dtype=float)
        self.hi = np.asarray(self.hi, dtype=float)
        if np.any(self.lo >= self.hi):
            raise GaugeballError("grid box needs lo < hi")
        if len(self.lo) > 3:
            raise GaugeballError("grid oracle is limited to dimension <= 3")
        if self.resolution < 2:
            raise GaugeballError("resolution must be at least 2")


@dataclass
class GridResult:
    center: np.ndarray
    value: float
    levels: list = field(default_factory=list)
    evaluations: int = 0

    def to_dict(self):
        return {"center": self.center.tolist(), "value": self.value,
                "levels": self.levels, "evaluations": self.evaluations}


def _anchor_points(t):
    """A few points pinning down where a target lives (for bounding boxes)."""
    if t.kind in ("points", "vpolytope"):
        return t.points
    if t.kind == "extended_ball":
        r = t.radius * t.dynamics.r_out
        return np.vstack([t.center - r, t.center + r])
    if t.kind == "euclidean_ball":
        return np.vstack([t.center - t.radius, t.center + t.radius])
    if t.kind == "halfspace":
        return (t.b / (t.a @ t.a) * t.a)[None, :]
    V = t.vertices()
    if V is not None and len(V):
        return V
    return polyhedra.dykstra(t.rows, t.offsets, np.zeros(t.dim))[None, :]


def instance_box(P, inflate=0.5, min_width=1.0):
    """Bounding box of every target's anchor points and their projections
    onto S, grown by ``inflate`` (fraction of the width, split over both
    sides). Including the projections keeps the box meeting S."""
    pts = np.vstack([_anchor_points(t) for t in P.enclose + P.intersect])
    pts = np.vstack([pts, project_constraint_rows(P.constraint, pts)])
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    width = np.maximum(hi - lo, min_width)
    mid = 0.5 * (lo + hi)
    half = 0.5 * width * (1.0 + inflate)
    return mid - half, mid + half


def lipschitz_constant(P):
    """Euclidean Lipschitz constant of the objective: each time function is
    1/r_F-Lipschitz, so G is too and H is m/r_F-Lipschitz."""
    L = 1.0 / P.dynamics.r_in
    return L if P.objective == "minmax" else P.m * L


def grid_minimize(P, spec=None):
    """Minimize the instance objective over a grid refined around the
    incumbent. Every evaluated point is feasible, so the result bounds the
    optimum from above.

    Each level zooms by ``spec.zoom`` but the new box always covers every
    evaluated point whose value is within (h*sqrt(n)/2)/r_F of the incumbent
    (h the grid step). For G that is the Lipschitz bound, so the minimizer
    cannot fall out of the box; for H it is a heuristic window (the rigorous
    m/r_F window would stop the zoom).
    """
    if P.dim > 3:
        raise GaugeballError("grid oracle is limited to dimension <= 3")
    if spec is None:
        lo, hi = instance_box(P)
        spec = GridSpec(lo, hi)
    L = 1.0 / P.dynamics.r_in
    lo, hi = spec.lo.copy(), spec.hi.copy()
    best_x, best_v = None, np.inf
    history = []
    evaluations = 0
    for level in range(spec.levels + 1):
        axes = [np.linspace(lo[i], hi[i], spec.resolution) for i in range(P.dim)]
        step = (hi - lo) / (spec.resolution - 1)
        slack = 0.5 * float(np.linalg.norm(step))
        grid = np.array(list(itertools.product(*axes)))
        proj = project_constraint_rows(P.constraint, grid)
        pts = proj[np.linalg.norm(proj - grid, axis=1) <= slack]
        vals = objective_values(P, pts) if len(pts) else np.zeros(0)
        if len(vals):
            # argmin keeps the first grid index on ties
            k = int(np.argmin(vals))
            if vals[k] < best_v:
                best_x, best_v = pts[k], float(vals[k])
        evaluations += len(vals)
        if best_x is None:
            raise GaugeballError("no feasible grid point in the search box")
        history.append(best_v)
        keep = pts[vals <= best_v + L * slack] if len(vals) else best_x[None, :]
        c_lo, c_hi = keep.min(axis=0) - slack, keep.max(axis=0) + slack
        width = np.maximum(c_hi - c_lo, (hi - lo) / spec.zoom)
        mid = 0.5 * (c_lo + c_hi)
        lo, hi = mid - 0.5 * width, mid + 0.5 * width
    return GridResult(best_x, float(best_v), history, evaluations)


def sample_points(t, count, seed=0, around=None):
    """Deterministic sample of points lying in target ``t``.

    Point sets return their points; polytopes their vertices plus random
    convex combinations; balls boundary points plus the center; unbounded sets
    are sampled near ``around`` (default: the origin) and projected in.
    """
    rng = np.random.default_rng(seed)
    n = t.dim
    if t.kind == "points":
        return t.points[:count] if count < len(t.points) else t.points.copy()
    if t.kind == "vpolytope":
        V = t.points
        extra = max(count - len(V), 0)
        W = rng.dirichlet(np.ones(len(V)), size=extra)
        return np.vstack([V, W @ V])
    if t.kind in ("extended_ball", "euclidean_ball"):
        U = rng.normal(size=(max(count - 1, 0), n))
        if t.kind == "extended_ball":
            B = np.array([boundary_point(t.dynamics, u) for u in U]).reshape(-1, n)
            B = t.center + t.radius * B
        else:
            B = t.center + t.radius * U / np.linalg.norm(U, axis=1, keepdims=True)
        return np.vstack([t.center[None, :], B])
    base = np.zeros(n) if around is None else np.asarray(around, dtype=float)
    anchor = euclidean_projection(t, base)
    scale = max(1.0, float(np.linalg.norm(anchor - base)))
    pts = [anchor]
    if t.kind == "hpolytope" and t.vertices() is not None:
        pts.extend(t.vertices())
    for u in rng.normal(size=(max(count - len(pts), 0), n)):
        pts.append(euclidean_projection(t, anchor + scale * u))
    return np.array(pts)


def sample_time_functions(F, t, x, count, seed=0):
    """(approx C_F, approx T_F) from a finite sample of ``t``.

    The sample lies inside ``t``, so approx C_F <= C_F and approx T_F >= T_F.
    """
    if not t.bounded:
        raise GaugeballError("maximal time needs a bounded target")
    x = np.asarray(x, dtype=float)
    vals = np.array([gauge(F, q - x) for q in sample_points(t, count, seed, around=x)])
    return float(vals.max()), float(vals.min())


def sample_minimal_time(F, t, x, count, seed=0):
    """Sampled upper bound on T_F(x; t); works for unbounded targets."""
    x = np.asarray(x, dtype=float)
    return float(min(gauge(F, q - x) for q in sample_points(t, count, seed, around=x)))
