"""Maximal and minimal time functions C_F(x; Q) and T_F(x; Q)."""

from dataclasses import dataclass

import numpy as np

from .gauge import gauge, gauge_pieces, gauge_subgradient, support
from .targets import _same_dynamics, farthest_projection, nearest_projection


@dataclass(frozen=True)
class TimeFnEval:
    value: float
    witness: np.ndarray
    subgradient: np.ndarray

    def to_dict(self):
        return {"value": self.value, "witness": self.witness.tolist(),
                "subgradient": self.subgradient.tolist()}


def maximal_time(F, omega, x):
    """Smallest t with omega inside x + tF, with its farthest witness."""
    x = np.asarray(x, dtype=float)
    proj = farthest_projection(F, omega, x)
    return TimeFnEval(proj.value, proj.point, -gauge_subgradient(F, proj.point - x))


def minimal_time(F, theta, x):
    """Smallest t with (x + tF) meeting theta, with its nearest witness."""
    x = np.asarray(x, dtype=float)
    proj = nearest_projection(F, theta, x)
    if proj.value == 0.0:
        return TimeFnEval(0.0, proj.point, np.zeros(F.dim))
    if theta.kind == "halfspace":
        # exact gradient a / sigma_F(-a); equals the witness chain for smooth F
        sigma, _ = support(F, -theta.a)
        return TimeFnEval(proj.value, proj.point, theta.a / sigma)
    return TimeFnEval(proj.value, proj.point, -gauge_subgradient(F, proj.point - x))


def maximal_time_pieces(F, omega, x, eps):
    """Convex minorants of C_F(.; omega) that are eps-active at x.

    Returns ``(values, gradients)``; the max of the values is C_F(x; omega)
    and each gradient is a subgradient of its own minorant at x.
    """
    x = np.asarray(x, dtype=float)
    if omega.kind in ("points", "vpolytope"):
        rhos = np.array([gauge(F, v - x) for v in omega.points])
        top = rhos.max()
        vals, grads = [], []
        for v, rho in zip(omega.points, rhos):
            if rho < top - eps:
                continue
            pv, pg = gauge_pieces(F, v - x, eps)
            vals.append(pv)
            grads.append(-pg)
        return np.concatenate(vals), np.vstack(grads)
    if omega.kind == "extended_ball" and F.polyhedral:
        pv, pg = gauge_pieces(F, omega.center - x, eps)
        return pv + omega.radius, -pg
    ev = maximal_time(F, omega, x)
    return np.array([ev.value]), ev.subgradient[None, :]


def minimal_time_pieces(F, theta, x, eps):
    """Same contract as :func:`maximal_time_pieces`, for T_F(.; theta).

    The zero function is always a minorant, so it is included whenever the
    value is within eps of zero.
    """
    x = np.asarray(x, dtype=float)
    if (theta.kind == "extended_ball" and F.polyhedral and F.symmetric
            and _same_dynamics(F, theta.dynamics)):
        pv, pg = gauge_pieces(F, theta.center - x, eps)
        vals, grads = pv - theta.radius, -pg
    else:
        ev = minimal_time(F, theta, x)
        vals, grads = np.array([ev.value]), ev.subgradient[None, :]
    top = max(float(vals.max()), 0.0)
    keep = vals >= top - eps
    vals, grads = vals[keep], grads[keep]
    if top <= eps:
        vals = np.append(vals, 0.0)
        grads = np.vstack([grads, np.zeros(F.dim)])
    return vals, grads
