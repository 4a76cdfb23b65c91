import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from gaugeball.constraints import (
    ConstraintSet,
    constraint_contains,
    project_constraint,
    project_constraint_rows,
)
from gaugeball.errors import GaugeballError

SETS = [
    ConstraintSet.whole(2),
    ConstraintSet.box([0, 0], [1, 1]),
    ConstraintSet.euclidean_ball([0, 0], 1),
    ConstraintSet.halfspace([1, 1], 1),
    ConstraintSet.hpolytope([[-1, 0], [0, -1], [1, 1]], [0, 0, 1]),
]


def test_projection_examples():
    np.testing.assert_allclose(project_constraint(SETS[1], [2, -1]), [1, 0])
    np.testing.assert_allclose(project_constraint(SETS[2], [3, 4]), [0.6, 0.8])
    np.testing.assert_allclose(project_constraint(SETS[4], [1, 1]), [0.5, 0.5], atol=1e-9)
    np.testing.assert_allclose(project_constraint(SETS[3], [2, 2]), [0.5, 0.5])


@pytest.mark.parametrize("S", SETS, ids=lambda S: S.kind)
@given(x=arrays(np.float64, 2, elements=st.floats(-5, 5)))
def test_projection_is_idempotent_and_optimal(S, x):
    p = project_constraint(S, x)
    assert constraint_contains(S, p, 1e-7)
    np.testing.assert_allclose(project_constraint(S, p), p, atol=1e-7)
    # variational inequality against a few points of S
    for y in np.random.default_rng(0).uniform(-3, 3, size=(10, 2)):
        q = project_constraint(S, y)
        assert (x - p) @ (q - p) <= 1e-6


def test_batched_projection():
    X = np.random.default_rng(1).normal(size=(7, 2)) * 3
    for S in SETS:
        np.testing.assert_allclose(project_constraint_rows(S, X),
                                   [project_constraint(S, x) for x in X])


def test_compactness_and_bounding_box():
    assert [S.compact for S in SETS] == [False, True, True, False, True]
    lo, hi = SETS[4].bounding_box()
    np.testing.assert_allclose(lo, [0, 0], atol=1e-9)
    np.testing.assert_allclose(hi, [1, 1], atol=1e-9)
    assert SETS[0].bounding_box() is None


def test_invalid_constraints():
    with pytest.raises(GaugeballError):
        ConstraintSet.box([1, 0], [0, 1])
    with pytest.raises(GaugeballError):
        ConstraintSet.hpolytope([[1, 0], [-1, 0]], [-1, -1])
    with pytest.raises(GaugeballError):
        ConstraintSet.halfspace([0, 0], 1)
