import numpy as np
import pytest

from gaugeball.constraints import ConstraintSet
from gaugeball.errors import GaugeballError
from gaugeball.gauge import DynamicsSet
from gaugeball.instances import named_instances
from gaugeball.objectives import ProblemInstance, objective_value
from gaugeball.oracle import (
    GridSpec,
    grid_minimize,
    instance_box,
    sample_minimal_time,
    sample_points,
    sample_time_functions,
)
from gaugeball.targets import TargetSet, membership
from gaugeball.timefns import maximal_time, minimal_time

from conftest import all_dynamics

E = DynamicsSet.euclidean(2)
NAMED = named_instances()


def test_grid_examples():
    assert grid_minimize(NAMED["sylvester_triangle"]).value == pytest.approx(np.sqrt(2), abs=1e-3)
    P = ProblemInstance(2, E, [], [TargetSet.point_set([[0, 0]]), TargetSet.point_set([[4, 0]])])
    assert grid_minimize(P).value == pytest.approx(2.0, abs=1e-3)
    assert grid_minimize(NAMED["ft_equilateral"]).value == pytest.approx(np.sqrt(3), abs=1e-3)


def test_grid_result_is_feasible_upper_bound():
    for P in NAMED.values():
        res = grid_minimize(P)
        assert res.value == pytest.approx(objective_value(P, res.center), abs=1e-12)
        assert np.all(np.diff(res.levels) <= 0)
        assert len(res.levels) == 5 and res.evaluations > 0
    P = NAMED["boxed_sylvester"]
    c = grid_minimize(P).center
    assert np.all(c >= [2, 0]) and np.all(c <= [3, 1])


def test_hpolytope_constraint_keeps_grid_nonempty():
    S = ConstraintSet.hpolytope([[-1, 0], [0, -1], [1, 1]], [0, 0, 1e-3])
    P = ProblemInstance(2, E, [TargetSet.point_set([[3, 3]])], constraint=S)
    res = grid_minimize(P)
    assert res.value == pytest.approx(np.hypot(3, 3) - 1e-3 / np.sqrt(2), abs=1e-3)


def test_grid_errors():
    with pytest.raises(GaugeballError):
        GridSpec([0, 0], [0, 1])
    with pytest.raises(GaugeballError):
        GridSpec(np.zeros(4), np.ones(4))
    F = DynamicsSet.euclidean(4)
    P = ProblemInstance(4, F, [TargetSet.point_set([np.ones(4)])])
    with pytest.raises(GaugeballError):
        grid_minimize(P)
    P = ProblemInstance(2, E, [TargetSet.point_set([[0, 0]])],
                        constraint=ConstraintSet.box([50, 50], [51, 51]))
    with pytest.raises(GaugeballError):
        grid_minimize(P, GridSpec([0, 0], [1, 1]))


def test_grid_3d_smoke():
    F = DynamicsSet.euclidean(3)
    P = ProblemInstance(3, F, [TargetSet.point_set(np.eye(3))])
    res = grid_minimize(P, GridSpec(*instance_box(P), resolution=16, levels=4))
    assert res.value == pytest.approx(np.sqrt(2 / 3), abs=1e-3)


def test_sampling_examples():
    x = np.array([0.3, -0.4])
    pts = TargetSet.point_set([[1, 2], [3, 0]])
    c, t = sample_time_functions(E, pts, x, 2)
    assert c == maximal_time(E, pts, x).value and t == minimal_time(E, pts, x).value
    ball = TargetSet.extended_ball([3, 0], 1, E)
    c, _ = sample_time_functions(E, ball, np.zeros(2), 10_000)
    assert c == pytest.approx(4.0, abs=1e-3)
    V = TargetSet.vpolytope([[0, 0], [2, 0], [1, 3]])
    c, _ = sample_time_functions(E, V, x, 50)
    assert c == maximal_time(E, V, x).value
    with pytest.raises(GaugeballError):
        sample_time_functions(E, TargetSet.halfspace([1, 0], 0), x, 10)


def test_sampling_one_sided_bounds():
    rng = np.random.default_rng(0)
    for F in all_dynamics().values():
        targets = [TargetSet.vpolytope([[0, 0], [2, 0], [1, 3]]),
                   TargetSet.extended_ball([1, -1], 0.6, F)]
        for t in targets:
            for x in rng.normal(size=(3, 2)) * 3:
                c, tt = sample_time_functions(F, t, x, 200, seed=1)
                assert c <= maximal_time(F, t, x).value + 1e-12
                assert tt >= minimal_time(F, t, x).value - 1e-9
        for t in (TargetSet.halfspace([1, 2], -1),
                  TargetSet.hpolytope([[-1, 0], [0, -1], [1, 1]], [-1, 0, 4])):
            x = np.array([-2.0, 2.0])
            assert sample_minimal_time(F, t, x, 100) >= minimal_time(F, t, x).value - 1e-9


def test_samples_lie_in_target_and_are_deterministic():
    for t in (TargetSet.vpolytope([[0, 0], [2, 0], [1, 3]]), TargetSet.euclidean_ball([1, 1], 2),
              TargetSet.halfspace([1, 1], 0),
              TargetSet.hpolytope([[-1, 0], [0, -1], [1, 1]], [0, 0, 1])):
        P = sample_points(t, 40, seed=3)
        assert all(membership(t, p, 1e-7) for p in P)
        assert np.array_equal(P, sample_points(t, 40, seed=3))
