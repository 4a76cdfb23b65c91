import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from scipy.spatial import ConvexHull

from gaugeball.errors import DimensionError, GaugeballError, UnsupportedCombination
from gaugeball.gauge import DynamicsSet, boundary_point, gauge, gauge_rows
from gaugeball.targets import (
    TargetSet,
    _nearest_generic,
    farthest_projection,
    farthest_values,
    membership,
    nearest_projection,
    nearest_values,
)

from conftest import all_dynamics, diamond, gauge_bisection

E = DynamicsSet.euclidean(2)
BOX = DynamicsSet.box(2)
DYN = all_dynamics()
vec2 = arrays(np.float64, 2, elements=st.floats(-6, 6))


def ball_boundary(F, c, s, count):
    th = 2 * np.pi * np.arange(count) / count
    return np.array([c + s * boundary_point(F, [np.cos(t), np.sin(t)]) for t in th])


def inside(theta, G):
    if theta.kind == "vpolytope":
        eq = ConvexHull(theta.points).equations
        return np.all(G @ eq[:, :2].T + eq[:, 2] <= 1e-12, axis=1)
    if theta.kind == "euclidean_ball":
        return np.linalg.norm(G - theta.center, axis=1) <= theta.radius
    if theta.kind == "extended_ball":
        return gauge_rows(theta.dynamics, G - theta.center) <= theta.radius
    if theta.kind == "halfspace":
        return G @ theta.a <= theta.b
    return np.all(G @ theta.rows.T <= theta.offsets, axis=1)


def grid_nearest(F, theta, x, lo, hi, h=1e-3):
    """Brute-force T_F over the grid points of a box lying in theta."""
    xs = np.arange(lo[0], hi[0] + h / 2, h)
    ys = np.arange(lo[1], hi[1] + h / 2, h)
    G = np.array(np.meshgrid(xs, ys)).reshape(2, -1).T
    return float(gauge_rows(F, G[inside(theta, G)] - x).min())


def test_farthest_examples():
    r = farthest_projection(E, TargetSet.point_set([[1, 0], [0, 1]]), np.zeros(2))
    assert r.value == 1.0 and list(r.point) == [1.0, 0.0]
    r = farthest_projection(E, TargetSet.extended_ball([3, 0], 1, E), np.zeros(2))
    assert r.value == 4.0
    np.testing.assert_allclose(r.point, [4, 0])
    r = farthest_projection(BOX, TargetSet.vpolytope([[2, 1], [-1, 3]]), np.zeros(2))
    assert r.value == 3.0 and list(r.point) == [-1.0, 3.0]


def test_extended_ball_farthest_matches_sampling():
    omega = TargetSet.extended_ball([3, 0], 1, E)
    B = ball_boundary(E, omega.center, 1, 10_000)
    assert max(gauge(E, q) for q in B) == pytest.approx(4.0, abs=1e-3)
    rng = np.random.default_rng(4)
    for name, F in DYN.items():
        omega = TargetSet.extended_ball([1.0, -0.5], 0.7, F)
        B = ball_boundary(F, omega.center, 0.7, 4000)
        for x in rng.normal(size=(4, 2)) * 3:
            sampled = max(gauge(F, q - x) for q in B)
            exact = farthest_projection(F, omega, x)
            assert sampled <= exact.value + 1e-9
            assert exact.value == pytest.approx(sampled, abs=5e-3 * exact.value)
            assert exact.value == pytest.approx(gauge(F, exact.point - x), abs=1e-9)


def test_extended_ball_centered_farthest_point():
    F = diamond()
    r = farthest_projection(F, TargetSet.extended_ball([1, 1], 0.5, F), np.array([1.0, 1.0]))
    assert r.value == 0.5
    np.testing.assert_allclose(r.point, [2, 1])


def test_vpolytope_farthest_matches_bisection_oracle():
    omega = TargetSet.vpolytope([[2, 1], [-1, 3]])
    x = np.array([1.0, 1.0])
    vals = [gauge_bisection(BOX, v - x) for v in omega.points]
    assert farthest_projection(BOX, omega, x).value == pytest.approx(max(vals), abs=1e-12)


def test_farthest_errors():
    with pytest.raises(GaugeballError):
        farthest_projection(E, TargetSet.halfspace([0, 1], 0), np.zeros(2))
    with pytest.raises(UnsupportedCombination):
        farthest_projection(BOX, TargetSet.euclidean_ball([0, 0], 1), np.zeros(2))
    with pytest.raises(UnsupportedCombination):
        farthest_projection(BOX, TargetSet.extended_ball([0, 0], 1, E), np.zeros(2))
    with pytest.raises(DimensionError):
        farthest_projection(E, TargetSet.point_set([[1, 2]]), np.zeros(3))


def test_nearest_examples():
    r = nearest_projection(E, TargetSet.halfspace([0, 1], 0), np.array([0.0, 2.0]))
    assert r.value == 2.0
    np.testing.assert_allclose(r.point, [0, 0])
    r = nearest_projection(E, TargetSet.extended_ball([3, 0], 1, E), np.zeros(2))
    assert r.value == 2.0
    np.testing.assert_allclose(r.point, [2, 0])
    theta = TargetSet.extended_ball([3, 0], 1, E)
    assert grid_nearest(E, theta, np.zeros(2), [1.9, -1.1], [4.1, 1.1]) == pytest.approx(2.0, abs=1e-3)


@pytest.mark.parametrize("theta", [
    TargetSet.point_set([[0, 0], [1, 1]]),
    TargetSet.vpolytope([[0, 0], [2, 0], [0, 2]]),
    TargetSet.euclidean_ball([0.5, 0.5], 1),
    TargetSet.halfspace([1, 1], 1),
    TargetSet.hpolytope([[-1, 0], [0, -1], [1, 1]], [0, 0, 1]),
], ids=lambda t: t.kind)
def test_membership_case_returns_x(dyn, theta):
    x = theta.points[0] if theta.points is not None else np.array([0.2, 0.2])
    r = nearest_projection(dyn, theta, x)
    assert r.value == 0.0 and np.array_equal(r.point, x)


def test_membership_examples():
    assert membership(TargetSet.halfspace([1, 0], 1), np.array([1.0, 0.0]), 0)
    assert membership(TargetSet.point_set([[0, 0]]), np.array([1e-8, 0.0]), 1e-7)
    assert membership(TargetSet.vpolytope([[0, 0], [1, 0], [0, 1]]), np.array([0.25, 0.25]), 0)
    assert not membership(TargetSet.vpolytope([[0, 0], [1, 0], [0, 1]]), np.array([0.6, 0.6]), 0)


NEAREST_CASES = [
    ("box", TargetSet.vpolytope([[2, 1], [3, -1], [4, 2]])),
    ("diamond", TargetSet.euclidean_ball([3, 2], 0.8)),
    ("lp3", TargetSet.hpolytope([[-1, 0], [0, -1], [1, 1]], [-2, -1, 5])),
    ("ellipsoid", TargetSet.vpolytope([[2, 1], [3, -1], [4, 2]])),
    ("skew", TargetSet.euclidean_ball([-3, 1], 1.0)),
    ("skew", TargetSet.extended_ball([2, 2], 0.5, DynamicsSet.hpolytope(
        [[-1, 0], [1, 2], [1, -2]], [1, 2, 2]))),
    ("box", TargetSet.halfspace([1, 2], -3)),
    ("lp1.5", TargetSet.halfspace([-1, 0.5], -2)),
]


@pytest.mark.parametrize("name,theta", NEAREST_CASES, ids=lambda v: getattr(v, "kind", v))
def test_nearest_matches_grid_oracle(name, theta):
    F = DYN[name] if theta.kind != "extended_ball" else theta.dynamics
    x = np.array([0.3, -0.2])
    r = nearest_projection(F, theta, x)
    assert membership(theta, r.point, 1e-7)
    assert r.value == pytest.approx(gauge(F, r.point - x), abs=1e-9)
    lo = r.point - 0.6
    hi = r.point + 0.6
    ref = grid_nearest(F, theta, x, lo, hi, h=2e-3)
    assert r.value <= ref + 1e-9
    # an interior grid point lies within h*sqrt(2) of the optimal boundary point
    assert r.value == pytest.approx(ref, abs=2e-3 * np.sqrt(2) / F.r_in)


def test_generic_routine_reports_inexact():
    theta = TargetSet.vpolytope([[2, 1], [3, -1], [4, 2]])
    r = nearest_projection(BOX, theta, np.zeros(2))
    assert not r.exact and r.iterations > 0


@pytest.mark.parametrize("name", ["euclidean", "lp3", "lp1.5", "ellipsoid"])
def test_nearest_projection_single_valued(name):
    F = DYN[name]
    theta = TargetSet.vpolytope([[2, 1], [3, -1], [4, 2], [2.5, 3]])
    x = np.array([-0.5, 0.4])
    a = _nearest_generic(F, theta, x, start=np.array([2.0, 1.0]))
    b = _nearest_generic(F, theta, x, start=np.array([4.0, 2.0]))
    assert np.linalg.norm(a.point - b.point) <= 1e-5


@given(vec2)
def test_nearest_point_on_boundary(x):
    for theta in (TargetSet.halfspace([1, -2], 1), TargetSet.euclidean_ball([1, 1], 1.5)):
        if membership(theta, x):
            continue
        for F in (E, DYN["ellipsoid"], DYN["diamond"]):
            p = nearest_projection(F, theta, x).point
            assert membership(theta, p, 1e-7)
            if theta.kind == "halfspace":
                assert abs(theta.a @ p - theta.b) <= 1e-9 * (1 + np.abs(p).sum())
            elif F.kind == "euclidean":
                assert abs(np.linalg.norm(p - theta.center) - theta.radius) <= 1e-9


@settings(max_examples=20)
@given(vec2, vec2)
def test_nearest_below_farthest(x, shift):
    for F in DYN.values():
        for omega in (TargetSet.point_set([[1, 2], [-1, 0], shift]),
                      TargetSet.vpolytope([[0, 0], [2, 0], shift]),
                      TargetSet.extended_ball(shift, 0.5, F)):
            near = nearest_projection(F, omega, x).value
            assert near <= farthest_projection(F, omega, x).value + 1e-9


@given(vec2, vec2)
def test_translation_equivariance(x, v):
    F = DYN["diamond"]
    for kind in ("points", "ball", "half", "ext"):
        if kind == "points":
            t0, t1 = TargetSet.point_set([[1, 2], [-1, 0]]), TargetSet.point_set([[1, 2] + v, [-1, 0] + v])
        elif kind == "ball":
            t0, t1 = TargetSet.euclidean_ball([1, 1], 1), TargetSet.euclidean_ball(np.array([1, 1]) + v, 1)
        elif kind == "half":
            a = np.array([1.0, -2.0])
            t0, t1 = TargetSet.halfspace(a, 1), TargetSet.halfspace(a, 1 + a @ v)
        else:
            t0, t1 = TargetSet.extended_ball([2, 0], 0.5, F), TargetSet.extended_ball(np.array([2, 0]) + v, 0.5, F)
        r0, r1 = nearest_projection(F, t0, x), nearest_projection(F, t1, x + v)
        assert r1.value == pytest.approx(r0.value, abs=1e-6)
        if r0.exact:
            np.testing.assert_allclose(r1.point, r0.point + v, atol=1e-6)


def test_batched_values_match_projections():
    rng = np.random.default_rng(8)
    X = rng.normal(size=(12, 2)) * 3
    for F in DYN.values():
        targets = [TargetSet.point_set([[1, 2], [-1, 0]]), TargetSet.vpolytope([[0, 0], [2, 0], [1, 3]]),
                   TargetSet.extended_ball([1, -1], 0.6, F), TargetSet.halfspace([1, 1], -1)]
        if F.kind == "euclidean":
            targets.append(TargetSet.euclidean_ball([2, 2], 1))
        for t in targets:
            if t.bounded:
                np.testing.assert_allclose(farthest_values(F, t, X),
                                           [farthest_projection(F, t, x).value for x in X], atol=1e-12)
            np.testing.assert_allclose(nearest_values(F, t, X),
                                       [nearest_projection(F, t, x).value for x in X], atol=1e-9)


def test_target_flags():
    assert TargetSet.euclidean_ball([0, 0], 1).strictly_convex
    assert TargetSet.extended_ball([0, 0], 1, E).strictly_convex
    assert not TargetSet.extended_ball([0, 0], 1, BOX).strictly_convex
    assert not TargetSet.halfspace([1, 0], 0).bounded
    assert TargetSet.hpolytope([[-1, 0], [0, -1], [1, 1]], [0, 0, 1]).bounded
    assert not TargetSet.hpolytope([[-1, 0], [0, -1]], [0, 0]).bounded
    assert TargetSet.point_set([[1, 1]]).is_singleton
    with pytest.raises(GaugeballError):
        TargetSet.halfspace([0, 0], 1)
    with pytest.raises(GaugeballError):
        TargetSet.hpolytope([[1, 0], [-1, 0]], [-1, -1])
