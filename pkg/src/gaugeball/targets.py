"""Target sets and their farthest / nearest projections under a gauge."""

from dataclasses import dataclass

import numpy as np

from . import polyhedra
from .errors import DimensionError, GaugeballError, UnsupportedCombination, check_dim
from .gauge import (
    boundary_point,
    euclidean_project,
    gauge,
    gauge_rows,
    gauge_subgradient,
    support,
)

KINDS = ("points", "vpolytope", "extended_ball", "euclidean_ball", "halfspace", "hpolytope")

# argmax / argmin ties inside this window go to the first stored index
TIE_TOL = 1e-12

GENERIC_ITERS = 2000
GENERIC_MIN_STEP = 1e-10


@dataclass(frozen=True, eq=False)
class TargetSet:
    kind: str
    dim: int
    points: np.ndarray | None = None
    center: np.ndarray | None = None
    radius: float = 0.0
    a: np.ndarray | None = None
    b: float = 0.0
    rows: np.ndarray | None = None
    offsets: np.ndarray | None = None
    dynamics: object = None

    @classmethod
    def point_set(cls, points):
        P = np.atleast_2d(np.asarray(points, dtype=float))
        if P.size == 0:
            raise GaugeballError("point set must be nonempty")
        return cls("points", P.shape[1], points=P)

    @classmethod
    def vpolytope(cls, vertices):
        V = np.atleast_2d(np.asarray(vertices, dtype=float))
        if V.size == 0:
            raise GaugeballError("vpolytope needs at least one vertex")
        return cls("vpolytope", V.shape[1], points=V)

    @classmethod
    def extended_ball(cls, center, s, dynamics):
        """The set center + s*F."""
        c = np.asarray(center, dtype=float)
        if s < 0:
            raise GaugeballError("extended ball scale must be nonnegative")
        check_dim(c, dynamics.dim)
        return cls("extended_ball", len(c), center=c, radius=float(s), dynamics=dynamics)

    @classmethod
    def euclidean_ball(cls, center, radius):
        c = np.asarray(center, dtype=float)
        if not radius > 0:
            raise GaugeballError("ball radius must be positive")
        return cls("euclidean_ball", len(c), center=c, radius=float(radius))

    @classmethod
    def halfspace(cls, a, b):
        """The set {x : <a, x> <= b}."""
        a = np.asarray(a, dtype=float)
        if not np.linalg.norm(a) > 0:
            raise GaugeballError("halfspace normal must be nonzero")
        return cls("halfspace", len(a), a=a, b=float(b))

    @classmethod
    def hpolytope(cls, rows, offsets):
        A = np.atleast_2d(np.asarray(rows, dtype=float))
        b = np.asarray(offsets, dtype=float).reshape(-1)
        if len(A) != len(b):
            raise GaugeballError("hpolytope rows/offsets shape mismatch")
        if not polyhedra.is_feasible(A, b):
            raise GaugeballError("hpolytope target is empty")
        return cls("hpolytope", A.shape[1], rows=A, offsets=b)

    @property
    def s(self):
        return self.radius

    @property
    def bounded(self):
        if self.kind == "halfspace":
            return False
        if self.kind == "hpolytope":
            if "_bounded" not in self.__dict__:
                bnds = polyhedra.coordinate_support_bounds(self.rows, self.offsets)
                object.__setattr__(self, "_bounded", bool(np.all(np.isfinite(bnds))))
            return self.__dict__["_bounded"]
        return True

    @property
    def convex(self):
        return self.kind != "points" or len(self.points) == 1

    @property
    def strictly_convex(self):
        # singletons are vacuously strictly convex
        if self.kind == "euclidean_ball":
            return True
        if self.kind == "extended_ball":
            return self.radius == 0.0 or self.dynamics.strictly_convex
        if self.kind in ("points", "vpolytope"):
            return len(np.unique(self.points, axis=0)) == 1
        return False

    @property
    def is_singleton(self):
        if self.kind in ("points", "vpolytope"):
            return len(np.unique(self.points, axis=0)) == 1
        return self.kind == "extended_ball" and self.radius == 0.0

    def singleton_point(self):
        return self.center.copy() if self.kind == "extended_ball" else self.points[0].copy()

    def vertices(self):
        """Finite point list generating the set (points, vertices), or None."""
        if self.kind in ("points", "vpolytope"):
            return self.points
        if self.kind == "hpolytope" and self.dim <= 3 and self.bounded:
            return polyhedra.enumerate_vertices(self.rows, self.offsets)
        return None

    def __repr__(self):
        return f"TargetSet({self.kind}, dim={self.dim})"


@dataclass(frozen=True)
class ProjectionResult:
    point: np.ndarray
    value: float
    exact: bool = True
    iterations: int = 0


def _check(T, x):
    x = np.asarray(x, dtype=float)
    if x.shape != (T.dim,):
        raise DimensionError(f"point has shape {x.shape}, target dimension {T.dim}")
    return x


def euclidean_distance(T, x):
    x = _check(T, x)
    if T.kind == "points":
        return float(np.min(np.linalg.norm(T.points - x, axis=1)))
    if T.kind == "halfspace":
        return max(T.a @ x - T.b, 0.0) / float(np.linalg.norm(T.a))
    if T.kind == "euclidean_ball":
        return max(float(np.linalg.norm(x - T.center)) - T.radius, 0.0)
    return float(np.linalg.norm(euclidean_projection(T, x) - x))


def membership(T, x, tol=0.0):
    """True iff ``x`` is within Euclidean distance ``tol`` of the set."""
    x = _check(T, x)
    if T.kind == "halfspace":
        return T.a @ x - T.b <= tol * np.linalg.norm(T.a)
    if T.kind == "hpolytope":
        viol = T.rows @ x - T.offsets
        if np.all(viol <= 0.0):
            return True
        if tol == 0.0:
            return False
        return euclidean_distance(T, x) <= tol
    if T.kind == "extended_ball":
        F = T.dynamics
        if F.kind == "euclidean":
            return euclidean_distance(T, x) <= tol
        # distance to c + sF is at most (rho - s) * R_F
        return (gauge(F, x - T.center) - T.radius) * F.r_out <= tol
    if T.kind == "vpolytope":
        return euclidean_distance(T, x) <= tol + 1e-12
    return euclidean_distance(T, x) <= tol


def euclidean_projection(T, x):
    """Euclidean nearest point (the convex projection; argmin for point sets)."""
    x = _check(T, x)
    if T.kind == "points":
        d = np.linalg.norm(T.points - x, axis=1)
        return T.points[_first_extreme(-d)].copy()
    if T.kind == "vpolytope":
        return polyhedra.project_hull(T.points, x)
    if T.kind == "halfspace":
        return polyhedra.project_halfspace(T.a, T.b, x)
    if T.kind == "hpolytope":
        return polyhedra.dykstra(T.rows, T.offsets, x)
    if T.kind == "euclidean_ball":
        d = x - T.center
        nrm = np.linalg.norm(d)
        return x.copy() if nrm <= T.radius else T.center + T.radius * d / nrm
    return euclidean_project(T.dynamics, T.center, T.radius, x)


def _first_extreme(vals):
    """Index of the first value within TIE_TOL of the max."""
    vals = np.asarray(vals)
    return int(np.argmax(vals >= vals.max() - TIE_TOL))


def _same_dynamics(F, G):
    if F is G:
        return True
    from .serialize import dynamics_to_dict

    return dynamics_to_dict(F) == dynamics_to_dict(G)


def farthest_projection(F, omega, x):
    """A point of ``omega`` at maximal gauge distance from ``x``."""
    x = _check(omega, x)
    check_dim(x, F.dim)
    if not omega.bounded:
        raise GaugeballError("farthest projection needs a bounded target")
    if omega.kind in ("points", "vpolytope"):
        vals = gauge_rows(F, omega.points - x)
        k = _first_extreme(vals)
        return ProjectionResult(omega.points[k].copy(), float(vals[k]))
    if omega.kind == "extended_ball":
        if not _same_dynamics(F, omega.dynamics):
            raise UnsupportedCombination("extended ball built on a different dynamics set")
        c, s = omega.center, omega.radius
        rho = gauge(F, c - x)
        if rho == 0.0:
            e = np.zeros(F.dim)
            e[0] = 1.0
            return ProjectionResult(c + s * boundary_point(F, e), s)
        return ProjectionResult(c + (s / rho) * (c - x), rho + s)
    if omega.kind == "euclidean_ball" and F.kind == "euclidean":
        c, r = omega.center, omega.radius
        d = c - x
        nrm = np.linalg.norm(d)
        if nrm == 0.0:
            d, nrm = np.eye(F.dim)[0], 1.0
        return ProjectionResult(c + r * d / nrm, (float(np.linalg.norm(c - x)) + r) / F.radius)
    raise UnsupportedCombination(
        f"no exact farthest projection onto {omega.kind} under {F.kind} dynamics")


def nearest_projection(F, theta, x):
    """A point of ``theta`` at minimal gauge distance from ``x``."""
    x = _check(theta, x)
    check_dim(x, F.dim)
    if theta.kind == "points":
        vals = gauge_rows(F, theta.points - x)
        k = _first_extreme(-vals)
        return ProjectionResult(theta.points[k].copy(), float(vals[k]))
    if membership(theta, x, 0.0):
        return ProjectionResult(x.copy(), 0.0)
    if theta.kind == "halfspace":
        # min t with <a, x + t u> <= b for some u in F
        sigma, u = support(F, -theta.a)
        t = (theta.a @ x - theta.b) / sigma
        return ProjectionResult(x + t * u, float(t))
    if theta.kind == "extended_ball" and F.symmetric and _same_dynamics(F, theta.dynamics):
        c, s = theta.center, theta.radius
        rho = gauge(F, c - x)
        return ProjectionResult(c - (s / rho) * (c - x), rho - s)
    if F.kind == "euclidean" and theta.kind in ("euclidean_ball", "vpolytope", "hpolytope"):
        p = euclidean_projection(theta, x)
        return ProjectionResult(p, float(np.linalg.norm(p - x)) / F.radius)
    if theta.kind == "extended_ball" and not _same_dynamics(F, theta.dynamics):
        raise UnsupportedCombination("extended ball built on a different dynamics set")
    return _nearest_generic(F, theta, x)


def _nearest_generic(F, theta, x, max_iter=GENERIC_ITERS, min_step=GENERIC_MIN_STEP,
                     start=None):
    """Projected subgradient on q -> rho_F(q - x) over a convex target,
    started from the Euclidean projection of ``start`` (default ``x``).

    Steps follow a Polyak rule against a target level that is halved whenever
    progress stalls; the level gap doubles as the step-size floor.
    """
    q = euclidean_projection(theta, x if start is None else np.asarray(start, dtype=float))
    val = gauge(F, q - x)
    best_q, best = q, val
    gap = 0.5 * best
    stall = 0
    it = 0
    for it in range(1, max_iter + 1):
        g = gauge_subgradient(F, q - x)
        gg = g @ g
        if gg == 0.0 or gap < min_step:
            break
        q = euclidean_projection(theta, q - ((val - (best - gap)) / gg) * g)
        val = gauge(F, q - x)
        if val < best:
            best, best_q, stall = val, q, 0
        else:
            stall += 1
        if stall >= 10:
            gap *= 0.5
            stall = 0
            q, val = best_q, best
    return ProjectionResult(best_q, float(best), exact=False, iterations=it)


def farthest_values(F, omega, X):
    """C_F values at every row of ``X`` (batched farthest projection)."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if omega.kind in ("points", "vpolytope"):
        return np.max(np.stack([gauge_rows(F, q - X) for q in omega.points]), axis=0)
    if omega.kind == "extended_ball" and _same_dynamics(F, omega.dynamics):
        return gauge_rows(F, omega.center - X) + omega.radius
    return np.array([farthest_projection(F, omega, x).value for x in X])


def nearest_values(F, theta, X):
    """T_F values at every row of ``X`` (batched nearest projection)."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if theta.kind == "points":
        return np.min(np.stack([gauge_rows(F, q - X) for q in theta.points]), axis=0)
    if theta.kind == "halfspace":
        sigma, _ = support(F, -theta.a)
        return np.maximum(X @ theta.a - theta.b, 0.0) / sigma
    if theta.kind == "extended_ball" and F.symmetric and _same_dynamics(F, theta.dynamics):
        return np.maximum(gauge_rows(F, theta.center - X) - theta.radius, 0.0)
    if theta.kind == "euclidean_ball" and F.kind == "euclidean":
        d = np.linalg.norm(X - theta.center, axis=1)
        return np.maximum(d - theta.radius, 0.0) / F.radius
    return np.array([nearest_projection(F, theta, x).value for x in X])
