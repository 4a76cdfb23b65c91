"""Dynamics sets F and their Minkowski gauges.

A dynamics set is a closed, bounded, convex body with the origin in its
interior. The gauge ``rho_F(x) = inf{t >= 0 : x in tF}`` plays the role of a
(possibly asymmetric) norm.
"""

from dataclasses import dataclass, field

import numpy as np

from . import polyhedra
from .errors import GaugeballError, check_dim

KINDS = ("euclidean", "lp", "box", "ellipsoid", "hpolytope")

# rows whose value is within this of the max count as active
ACTIVE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class DynamicsSet:
    kind: str
    dim: int
    radius: float = 1.0
    p: float | None = None
    matrix: np.ndarray | None = None
    rows: np.ndarray | None = None
    offsets: np.ndarray | None = None
    r_in: float = field(init=False)
    r_out: float = field(init=False)
    vertices: np.ndarray | None = field(init=False, default=None)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise GaugeballError(f"unknown dynamics kind {self.kind!r}")
        if self.dim < 1:
            raise GaugeballError("dimension must be positive")
        n = self.dim
        if self.kind in ("euclidean", "lp", "box") and not self.radius > 0:
            raise GaugeballError("radius must be positive")
        if self.kind == "euclidean":
            r_in, r_out = self.radius, self.radius
        elif self.kind == "lp":
            if self.p is None or not 1 < self.p < np.inf:
                raise GaugeballError("lp ball needs 1 < p < inf")
            if self.p >= 2:
                r_in, r_out = self.radius, self.radius * n ** (0.5 - 1.0 / self.p)
            else:
                r_in, r_out = self.radius / n ** (1.0 / self.p - 0.5), self.radius
        elif self.kind == "box":
            r_in, r_out = self.radius, self.radius * np.sqrt(n)
        elif self.kind == "ellipsoid":
            A = np.asarray(self.matrix, dtype=float)
            if A.shape != (n, n) or not np.allclose(A, A.T):
                raise GaugeballError("ellipsoid matrix must be symmetric n x n")
            eig = np.linalg.eigvalsh(A)
            if eig[0] <= 0:
                raise GaugeballError("ellipsoid matrix must be positive definite")
            object.__setattr__(self, "matrix", A)
            object.__setattr__(self, "_inv", np.linalg.inv(A))
            # A = R'R, so the gauge is |Rx| without squaring x
            object.__setattr__(self, "_chol", np.linalg.cholesky(A).T)
            r_in, r_out = 1.0 / np.sqrt(eig[-1]), 1.0 / np.sqrt(eig[0])
        else:
            A = np.atleast_2d(np.asarray(self.rows, dtype=float))
            b = np.asarray(self.offsets, dtype=float).reshape(-1)
            if A.shape[1] != n or len(A) != len(b):
                raise GaugeballError("hpolytope rows/offsets shape mismatch")
            if np.any(b <= 0):
                raise GaugeballError("hpolytope offsets must be positive (0 interior)")
            bounds = polyhedra.coordinate_support_bounds(A, b)
            if not np.all(np.isfinite(bounds)):
                raise GaugeballError("hpolytope dynamics set is unbounded")
            object.__setattr__(self, "rows", A)
            object.__setattr__(self, "offsets", b)
            object.__setattr__(self, "_scaled", A / b[:, None])
            r_in = float(np.min(b / np.linalg.norm(A, axis=1)))
            if n <= 3:
                V = polyhedra.enumerate_vertices(A, b)
                object.__setattr__(self, "vertices", V)
                r_out = float(np.max(np.linalg.norm(V, axis=1)))
            else:
                r_out = float(np.max(bounds) * np.sqrt(n))
        object.__setattr__(self, "r_in", float(r_in))
        object.__setattr__(self, "r_out", float(r_out))

    # constructors -------------------------------------------------------
    @classmethod
    def euclidean(cls, dim, radius=1.0):
        return cls("euclidean", dim, radius=float(radius))

    @classmethod
    def lp_ball(cls, dim, p, radius=1.0):
        return cls("lp", dim, radius=float(radius), p=float(p))

    @classmethod
    def box(cls, dim, radius=1.0):
        return cls("box", dim, radius=float(radius))

    @classmethod
    def ellipsoid(cls, matrix):
        A = np.asarray(matrix, dtype=float)
        return cls("ellipsoid", A.shape[0], matrix=A)

    @classmethod
    def hpolytope(cls, rows, offsets):
        A = np.atleast_2d(np.asarray(rows, dtype=float))
        return cls("hpolytope", A.shape[1], rows=A, offsets=offsets)

    @property
    def strictly_convex(self):
        return self.kind in ("euclidean", "lp", "ellipsoid")

    @property
    def polyhedral(self):
        return self.kind in ("box", "hpolytope")

    @property
    def symmetric(self):
        """True when F = -F."""
        if self.kind != "hpolytope":
            return True
        S = self._scaled
        return all(np.any(np.all(np.isclose(S, -s), axis=1)) for s in S)

    def __repr__(self):
        return f"DynamicsSet({self.kind}, dim={self.dim})"


def _norm(x, p=2.0):
    """p-norm with the largest entry factored out, so tiny or huge vectors
    do not underflow / overflow."""
    m = float(np.max(np.abs(x)))
    if m == 0.0 or not np.isfinite(m):
        return m
    return m * float(np.linalg.norm(x / m, ord=p))


def gauge(F, x):
    x = np.asarray(x, dtype=float)
    check_dim(x, F.dim)
    if F.kind == "euclidean":
        return _norm(x) / F.radius
    if F.kind == "lp":
        return _norm(x, F.p) / F.radius
    if F.kind == "box":
        return float(np.max(np.abs(x))) / F.radius
    if F.kind == "ellipsoid":
        return _norm(F._chol @ x)
    return max(float(np.max(F._scaled @ x)), 0.0)


def gauge_rows(F, X):
    """Gauge of every row of ``X``."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if F.kind == "euclidean":
        return np.sqrt(np.einsum("ij,ij->i", X, X)) / F.radius
    if F.kind == "lp":
        return np.sum(np.abs(X) ** F.p, axis=1) ** (1.0 / F.p) / F.radius
    if F.kind == "box":
        return np.max(np.abs(X), axis=1) / F.radius
    if F.kind == "ellipsoid":
        Y = X @ F._chol.T
        return np.sqrt(np.einsum("ij,ij->i", Y, Y))
    return np.maximum(np.max(X @ F._scaled.T, axis=1), 0.0)


def gauge_subgradient(F, x):
    """One element of the subdifferential of the gauge at ``x``.

    Polyhedral kinds return the first active row in stored order; at the
    origin the zero vector is returned.
    """
    x = np.asarray(x, dtype=float)
    check_dim(x, F.dim)
    if not np.any(x):
        return np.zeros(F.dim)
    if F.kind == "euclidean":
        return x / (F.radius * _norm(x))
    if F.kind == "ellipsoid":
        Rx = F._chol @ x
        return F._chol.T @ (Rx / _norm(Rx))
    if F.kind == "lp":
        p = F.p
        nrm = _norm(x, p)
        return np.sign(x) * (np.abs(x) / nrm) ** (p - 1) / F.radius
    if F.kind == "box":
        ax = np.abs(x)
        i = int(np.argmax(ax >= ax.max() - ACTIVE_TOL))
        g = np.zeros(F.dim)
        g[i] = np.sign(x[i]) / F.radius
        return g
    vals = F._scaled @ x
    k = int(np.argmax(vals >= vals.max() - ACTIVE_TOL))
    return F._scaled[k].copy()


def gauge_pieces(F, x, eps):
    """Values and gradients of the linear pieces of the gauge that are within
    ``eps`` of the max at ``x`` (polyhedral kinds), or the single smooth piece."""
    x = np.asarray(x, dtype=float)
    if F.kind == "hpolytope":
        vals = F._scaled @ x
        keep = vals >= vals.max() - eps
        return vals[keep], F._scaled[keep]
    if F.kind == "box":
        n = F.dim
        G = np.vstack([np.eye(n), -np.eye(n)]) / F.radius
        vals = G @ x
        keep = vals >= vals.max() - eps
        return vals[keep], G[keep]
    return np.array([gauge(F, x)]), gauge_subgradient(F, x)[None, :]


def contains(F, x, tol=0.0):
    return gauge(F, x) <= 1.0 + tol


def support(F, d):
    """Support function sigma_F(d) = max_{u in F} <d, u> and a maximizer."""
    d = np.asarray(d, dtype=float)
    check_dim(d, F.dim)
    if not np.any(d):
        return 0.0, np.zeros(F.dim)
    if F.kind == "euclidean":
        nrm = np.linalg.norm(d)
        return F.radius * float(nrm), F.radius * d / nrm
    if F.kind == "box":
        return F.radius * float(np.abs(d).sum()), F.radius * np.sign(d)
    if F.kind == "lp":
        q = F.p / (F.p - 1.0)
        nrm = np.linalg.norm(d, ord=q)
        u = np.sign(d) * (np.abs(d) / nrm) ** (q - 1.0)
        return F.radius * float(nrm), F.radius * u
    if F.kind == "ellipsoid":
        w = F._inv @ d
        val = float(np.sqrt(d @ w))
        return val, w / val
    if F.vertices is not None:
        vals = F.vertices @ d
        k = int(np.argmax(vals))
        return float(vals[k]), F.vertices[k].copy()
    return polyhedra.support_lp(F.rows, F.offsets, d)


def boundary_point(F, w):
    """The point of the boundary of F on the ray through ``w`` (w != 0)."""
    w = np.asarray(w, dtype=float)
    return w / gauge(F, w)


def euclidean_project(F, c, s, x):
    """Euclidean projection of ``x`` onto the extended ball c + sF."""
    if s == 0.0:
        return np.array(c, dtype=float)
    if F.kind == "euclidean":
        d = x - c
        nrm = np.linalg.norm(d)
        r = s * F.radius
        return x.copy() if nrm <= r else c + r * d / nrm
    if F.kind == "box":
        r = s * F.radius
        return np.clip(x, c - r, c + r)
    if F.kind == "hpolytope":
        return polyhedra.dykstra(F.rows, s * F.offsets + F.rows @ c, x)
    if gauge(F, x - c) <= s:
        return x.copy()
    if F.kind == "ellipsoid":
        return c + _project_ellipsoid(F.matrix / s**2, x - c)
    return c + _project_convex_smooth(F, s, x - c)


def _project_ellipsoid(A, y):
    # min |z - y|^2 s.t. z'Az <= 1; z = (I + mu A)^-1 y with mu >= 0 by bisection
    w, U = np.linalg.eigh(A)
    yt = U.T @ y
    f = lambda mu: float(np.sum(w * (yt / (1.0 + mu * w)) ** 2)) - 1.0
    lo, hi = 0.0, 1.0
    while f(hi) > 0:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-16 * max(1.0, hi):
            break
    return U @ (yt / (1.0 + hi * w))


def _project_convex_smooth(F, s, y, iters=200):
    # lp balls only; no closed form, small smooth QCQP
    from scipy.optimize import minimize

    z0 = s * boundary_point(F, y)
    cons = {"type": "ineq", "fun": lambda z: s - gauge(F, z),
            "jac": lambda z: -gauge_subgradient(F, z)}
    res = minimize(lambda z: 0.5 * np.sum((z - y) ** 2), z0, jac=lambda z: z - y,
                   constraints=[cons], method="SLSQP",
                   options={"ftol": 1e-14, "maxiter": iters})
    z = res.x
    g = gauge(F, z)
    return z if g <= s else z * (s / g)
