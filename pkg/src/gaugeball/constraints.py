"""Constraint sets S and Euclidean projection onto them."""

from dataclasses import dataclass

import numpy as np

from . import polyhedra
from .errors import GaugeballError, check_dim

KINDS = ("whole", "box", "euclidean_ball", "halfspace", "hpolytope")


@dataclass(frozen=True, eq=False)
class ConstraintSet:
    kind: str
    dim: int
    lo: np.ndarray | None = None
    hi: np.ndarray | None = None
    center: np.ndarray | None = None
    radius: float = 0.0
    a: np.ndarray | None = None
    b: float = 0.0
    rows: np.ndarray | None = None
    offsets: np.ndarray | None = None

    @classmethod
    def whole(cls, dim):
        return cls("whole", dim)

    @classmethod
    def box(cls, lo, hi):
        lo = np.asarray(lo, dtype=float)
        hi = np.asarray(hi, dtype=float)
        if lo.shape != hi.shape or np.any(lo > hi):
            raise GaugeballError("box needs lo <= hi componentwise")
        return cls("box", len(lo), lo=lo, hi=hi)

    @classmethod
    def euclidean_ball(cls, center, radius):
        c = np.asarray(center, dtype=float)
        if radius < 0:
            raise GaugeballError("constraint ball radius must be nonnegative")
        return cls("euclidean_ball", len(c), center=c, radius=float(radius))

    @classmethod
    def halfspace(cls, a, b):
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
            raise GaugeballError("constraint polytope is empty")
        return cls("hpolytope", A.shape[1], rows=A, offsets=b)

    @property
    def compact(self):
        if self.kind in ("box", "euclidean_ball"):
            return True
        if self.kind == "hpolytope":
            return bool(np.all(np.isfinite(
                polyhedra.coordinate_support_bounds(self.rows, self.offsets))))
        return False

    def bounding_box(self):
        """(lo, hi) of a box containing S, or None when S is unbounded."""
        if self.kind == "box":
            return self.lo, self.hi
        if self.kind == "euclidean_ball":
            return self.center - self.radius, self.center + self.radius
        if self.kind == "hpolytope" and self.compact:
            bnds = polyhedra.coordinate_support_bounds(self.rows, self.offsets)
            return -bnds[1::2], bnds[0::2]
        return None

    def __repr__(self):
        return f"ConstraintSet({self.kind}, dim={self.dim})"


def project_constraint(S, x):
    """Euclidean projection of ``x`` onto S."""
    x = np.asarray(x, dtype=float)
    check_dim(x, S.dim)
    if S.kind == "whole":
        return x.copy()
    if S.kind == "box":
        return np.clip(x, S.lo, S.hi)
    if S.kind == "euclidean_ball":
        d = x - S.center
        nrm = np.linalg.norm(d)
        return x.copy() if nrm <= S.radius else S.center + S.radius * d / nrm
    if S.kind == "halfspace":
        return polyhedra.project_halfspace(S.a, S.b, x)
    return polyhedra.dykstra(S.rows, S.offsets, x)


def project_constraint_rows(S, X):
    """project_constraint applied to every row of ``X``."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if S.kind == "whole":
        return X.copy()
    if S.kind == "box":
        return np.clip(X, S.lo, S.hi)
    return np.array([project_constraint(S, x) for x in X])


def constraint_contains(S, x, tol=1e-9):
    return float(np.linalg.norm(project_constraint(S, x) - x)) <= tol
