"""Named benchmark instances and a seeded random instance generator.

Generator recipe (2D): the dynamics set is drawn from five fixed bodies
(unit disk, unit square, unit l3 ball, a tilted ellipse and a diamond of
radius 1.5); coordinates are uniform on [-3, 3]. Enclose targets are point
sets (1-3 points), triangles or extended balls; intersect targets are
half-spaces, extended balls, Euclidean disks (disk dynamics only) or single
points. About a third of the instances get a box constraint [-2, 2]^2. Only
(dynamics, target) pairs with closed-form projections are drawn, so every
instance stays cheap to evaluate.
"""

import numpy as np

from .constraints import ConstraintSet
from .gauge import DynamicsSet
from .objectives import ProblemInstance
from .targets import TargetSet


def dynamics_zoo(dim=2):
    return {
        "euclidean": DynamicsSet.euclidean(dim),
        "box": DynamicsSet.box(dim),
        "lp3": DynamicsSet.lp_ball(dim, 3.0),
        "ellipsoid": DynamicsSet.ellipsoid([[1.5, 0.3], [0.3, 1.0]]),
        "diamond": DynamicsSet.hpolytope([[1, 1], [1, -1], [-1, 1], [-1, -1]], [1.5] * 4),
    }


def named_instances():
    """Hand-checked instances with known optimal values."""
    E = DynamicsSet.euclidean(2)
    diamond = dynamics_zoo()["diamond"]
    s3 = np.sqrt(3.0)
    out = {
        # circumcircle of the right triangle: center (1,1), radius sqrt(2)
        "sylvester_triangle": ProblemInstance(
            2, E, [TargetSet.point_set([[0, 0], [2, 0], [0, 2]])]),
        # equidistance equations give center (1, 0.75), radius 1.25
        "enclosing_isosceles": ProblemInstance(
            2, E, [TargetSet.point_set([[0, 0], [2, 0], [1, 2]])]),
        # centroid of the equilateral triangle, value 3 * (1/sqrt 3)
        "ft_equilateral": ProblemInstance(
            2, E, [TargetSet.point_set([p]) for p in [[0, 0], [1, 0], [0.5, s3 / 2]]],
            objective="sum"),
        # every point of the segment is optimal, value 4
        "two_points_sum": ProblemInstance(
            2, E, [TargetSet.point_set([p]) for p in [[0, 0], [4, 0]]], objective="sum"),
        # enclose the origin, reach the half-plane x1 >= 4: optimum (2,0), value 2
        "enclose_and_reach": ProblemInstance(
            2, E, [TargetSet.point_set([[0, 0]])], [TargetSet.halfspace([-1, 0], -4)]),
        # diamond gauge is |x|+|y| over 1.5; points (+-3, 0): optimum 2 at the origin
        "diamond_pair": ProblemInstance(
            2, diamond, [TargetSet.point_set([[-3, 0], [3, 0]])]),
        # smallest disk meeting three unit-offset disks
        "intersecting_disks": ProblemInstance(
            2, E, [], [TargetSet.euclidean_ball(c, 0.5) for c in [[0, 0], [4, 0], [2, 3]]]),
        # Sylvester triangle forced into the box [2,3]x[0,1]: optimum (2,1), value sqrt 5
        "boxed_sylvester": ProblemInstance(
            2, E, [TargetSet.point_set([[0, 0], [2, 0], [0, 2]])],
            constraint=ConstraintSet.box([2, 0], [3, 1])),
    }
    return out


def _enclose_target(rng, F):
    kind = rng.choice(["points", "vpolytope", "extended_ball"])
    if kind == "points":
        return TargetSet.point_set(rng.uniform(-3, 3, size=(rng.integers(1, 4), 2)))
    if kind == "vpolytope":
        c = rng.uniform(-2.5, 2.5, size=2)
        return TargetSet.vpolytope(c + rng.uniform(-0.8, 0.8, size=(3, 2)))
    return TargetSet.extended_ball(rng.uniform(-3, 3, size=2), rng.uniform(0.2, 1.0), F)


def _intersect_target(rng, F, fname, objective):
    kinds = ["halfspace", "extended_ball", "point"]
    if fname == "euclidean":
        kinds.append("euclidean_ball")
    kind = rng.choice(kinds)
    if kind == "halfspace":
        a = rng.normal(size=2)
        a /= np.linalg.norm(a)
        return TargetSet.halfspace(a, rng.uniform(-3, -0.5))
    if kind == "extended_ball":
        return TargetSet.extended_ball(rng.uniform(-3, 3, size=2), rng.uniform(0.2, 1.0), F)
    if kind == "euclidean_ball":
        return TargetSet.euclidean_ball(rng.uniform(-3, 3, size=2), rng.uniform(0.2, 1.0))
    return TargetSet.point_set([rng.uniform(-3, 3, size=2)])


def random_instance(rng, objective=None, dynamics=None, intersect_kinds=True):
    """One instance from the generator described in the module docstring."""
    zoo = dynamics_zoo()
    fname = dynamics or str(rng.choice(list(zoo)))
    F = zoo[fname]
    objective = objective or str(rng.choice(["minmax", "sum"]))
    n_enc = int(rng.integers(0, 4))
    n_int = int(rng.integers(0, 4)) if intersect_kinds else 0
    if n_enc + n_int == 0:
        n_enc = 1
    enclose = [_enclose_target(rng, F) for _ in range(n_enc)]
    intersect = [_intersect_target(rng, F, fname, objective) for _ in range(n_int)]
    S = ConstraintSet.box([-2, -2], [2, 2]) if rng.random() < 1 / 3 else None
    return ProblemInstance(2, F, enclose, intersect, S, objective)


def generated_instances(count, seed=0):
    rng = np.random.default_rng(seed)
    return {f"gen_{k:02d}": random_instance(rng) for k in range(count)}


def benchmark_suite(seed=0, generated=20):
    suite = dict(named_instances())
    suite.update(generated_instances(generated, seed))
    return suite
