"""Plain-text SVG drawing of a 2D instance and its optimal ball."""

import numpy as np

from . import polyhedra
from .errors import DimensionError
from .gauge import gauge
from .oracle import instance_box

BALL_DIRECTIONS = 256
SIZE = 480
PAD = 24

ENCLOSE_STYLE = 'fill="none" stroke="#1f5fa8" stroke-width="1.5"'
INTERSECT_STYLE = 'fill="#e0882a" fill-opacity="0.15" stroke="#e0882a" stroke-width="1.5" stroke-dasharray="5,3"'
CONSTRAINT_STYLE = 'fill="#888888" fill-opacity="0.12" stroke="#888888" stroke-width="1"'
BALL_STYLE = 'fill="none" stroke="#b0243a" stroke-width="2"'


def ball_outline(F, center, r, count=BALL_DIRECTIONS):
    """Points of center + r*bd(F) along ``count`` evenly spaced directions."""
    th = 2 * np.pi * np.arange(count) / count
    U = np.column_stack([np.cos(th), np.sin(th)])
    return np.array([center + r * u / gauge(F, u) for u in U])


def _ordered(V):
    c = V.mean(axis=0)
    return V[np.argsort(np.arctan2(V[:, 1] - c[1], V[:, 0] - c[0]))]


def _clip(rows, offsets, lo, hi):
    """Vertices of {A x <= b} cut down to the view box, in boundary order."""
    A = np.vstack([np.atleast_2d(rows), np.eye(2), -np.eye(2)])
    b = np.concatenate([np.ravel(offsets), hi, -lo])
    V = polyhedra.enumerate_vertices(A, b)
    return _ordered(V) if len(V) else V


class _Canvas:
    def __init__(self, lo, hi):
        span = float(np.max(hi - lo))
        self.lo = lo
        self.scale = (SIZE - 2 * PAD) / span
        self.height = SIZE
        self.parts = []

    def xy(self, p):
        x = PAD + (p[0] - self.lo[0]) * self.scale
        y = self.height - PAD - (p[1] - self.lo[1]) * self.scale
        return x, y

    def polygon(self, V, style, cls):
        if len(V) == 0:
            return
        pts = " ".join("%.3f,%.3f" % self.xy(p) for p in V)
        tag = "polygon" if len(V) >= 3 else "polyline"
        self.parts.append(f'<{tag} class="{cls}" points="{pts}" {style}/>')

    def circle(self, c, r, style, cls):
        x, y = self.xy(c)
        self.parts.append(f'<circle class="{cls}" cx="{x:.3f}" cy="{y:.3f}" '
                          f'r="{r * self.scale:.3f}" {style}/>')

    def dot(self, c, color, cls, radius=3.0):
        x, y = self.xy(c)
        self.parts.append(f'<circle class="{cls}" cx="{x:.3f}" cy="{y:.3f}" '
                          f'r="{radius}" fill="{color}"/>')

    def text(self):
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
                f'viewBox="0 0 {SIZE} {SIZE}">')
        return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>']
                         + self.parts + ["</svg>"]) + "\n"


def _draw_target(cv, t, lo, hi, style, cls, color):
    if t.kind == "points":
        for p in t.points:
            cv.dot(p, color, cls)
    elif t.kind == "vpolytope":
        cv.polygon(_ordered(np.unique(t.points, axis=0)), style, cls)
    elif t.kind == "extended_ball":
        if t.radius == 0:
            cv.dot(t.center, color, cls)
        else:
            cv.polygon(ball_outline(t.dynamics, t.center, t.radius), style, cls)
    elif t.kind == "euclidean_ball":
        cv.circle(t.center, t.radius, style, cls)
    elif t.kind == "halfspace":
        cv.polygon(_clip(t.a[None, :], [t.b], lo, hi), style, cls)
    else:
        cv.polygon(_clip(t.rows, t.offsets, lo, hi), style, cls)


def render_svg(P, center, value):
    """SVG text showing the instance and the ball center + value*F."""
    if P.dim != 2:
        raise DimensionError("rendering needs a 2D instance")
    F = P.dynamics
    center = np.asarray(center, dtype=float)
    ball = ball_outline(F, center, value)
    lo, hi = instance_box(P, inflate=0.2)
    lo = np.minimum(lo, ball.min(axis=0))
    hi = np.maximum(hi, ball.max(axis=0))
    pad = 0.05 * float(np.max(hi - lo))
    lo, hi = lo - pad, hi + pad
    cv = _Canvas(lo, hi)

    S = P.constraint
    if S.kind == "box":
        cv.polygon(np.array([S.lo, [S.hi[0], S.lo[1]], S.hi, [S.lo[0], S.hi[1]]]),
                   CONSTRAINT_STYLE, "constraint")
    elif S.kind == "euclidean_ball":
        cv.circle(S.center, S.radius, CONSTRAINT_STYLE, "constraint")
    elif S.kind == "halfspace":
        cv.polygon(_clip(S.a[None, :], [S.b], lo, hi), CONSTRAINT_STYLE, "constraint")
    elif S.kind == "hpolytope":
        cv.polygon(_clip(S.rows, S.offsets, lo, hi), CONSTRAINT_STYLE, "constraint")

    for t in P.intersect:
        _draw_target(cv, t, lo, hi, INTERSECT_STYLE, "intersect", "#e0882a")
    for t in P.enclose:
        _draw_target(cv, t, lo, hi, ENCLOSE_STYLE, "enclose", "#1f5fa8")
    if value > 0:
        cv.polygon(ball, BALL_STYLE, "ball")
    cv.dot(center, "#b0243a", "center", radius=4.0)
    return cv.text()
