"""JSON encoding of dynamics sets, targets, constraints and problem files."""

import json

import jsonschema
import numpy as np

from .constraints import ConstraintSet
from .errors import GaugeballError, SchemaError
from .gauge import DynamicsSet
from .objectives import ProblemInstance
from .targets import TargetSet

_vec = {"type": "array", "items": {"type": "number"}, "minItems": 1}
_mat = {"type": "array", "items": _vec, "minItems": 1}

PROBLEM_SCHEMA = {
    "type": "object",
    "required": ["dim", "dynamics"],
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "dynamics": {
            "type": "object",
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["euclidean", "lp", "box", "ellipsoid", "hpolytope"]},
                "radius": {"type": "number", "exclusiveMinimum": 0},
                "p": {"type": "number", "exclusiveMinimum": 1},
                "A": {"oneOf": [_mat, _vec]},
                "rows": _mat,
                "offsets": _vec,
            },
        },
        "enclose": {"type": "array", "items": {"$ref": "#/$defs/target"}},
        "intersect": {"type": "array", "items": {"$ref": "#/$defs/target"}},
        "constraint": {
            "type": "object",
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["whole", "box", "euclidean_ball", "halfspace", "hpolytope"]},
            },
        },
        "objective": {"enum": ["minmax", "sum"]},
    },
    "$defs": {
        "target": {
            "type": "object",
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["points", "vpolytope", "extended_ball", "euclidean_ball",
                                  "halfspace", "hpolytope"]},
                "points": _mat,
                "vertices": _mat,
                "center": _vec,
                "s": {"type": "number", "minimum": 0},
                "radius": {"type": "number", "exclusiveMinimum": 0},
                "a": _vec,
                "b": {"type": "number"},
                "rows": _mat,
                "offsets": _vec,
            },
        }
    },
}


def _f(x):
    return float(x)


def dynamics_to_dict(F):
    d = {"kind": F.kind}
    if F.kind in ("euclidean", "lp", "box"):
        d["radius"] = _f(F.radius)
    if F.kind == "lp":
        d["p"] = _f(F.p)
    if F.kind == "ellipsoid":
        d["A"] = F.matrix.tolist()
    if F.kind == "hpolytope":
        d["rows"] = F.rows.tolist()
        d["offsets"] = F.offsets.tolist()
    return d


def dynamics_from_dict(d, dim):
    kind = d["kind"]
    try:
        if kind == "euclidean":
            return DynamicsSet.euclidean(dim, d.get("radius", 1.0))
        if kind == "lp":
            return DynamicsSet.lp_ball(dim, d["p"], d.get("radius", 1.0))
        if kind == "box":
            return DynamicsSet.box(dim, d.get("radius", 1.0))
        if kind == "ellipsoid":
            A = np.asarray(d["A"], dtype=float)
            if A.ndim == 1:
                A = A.reshape(dim, dim)
            return DynamicsSet.ellipsoid(A)
        if kind == "hpolytope":
            return DynamicsSet.hpolytope(d["rows"], d["offsets"])
    except KeyError as e:
        raise SchemaError(f"dynamics of kind {kind!r} is missing field {e}") from None
    raise SchemaError(f"unknown dynamics kind {kind!r}")


def target_to_dict(t):
    d = {"kind": t.kind}
    if t.kind == "points":
        d["points"] = t.points.tolist()
    elif t.kind == "vpolytope":
        d["vertices"] = t.points.tolist()
    elif t.kind == "extended_ball":
        d["center"] = t.center.tolist()
        d["s"] = _f(t.radius)
    elif t.kind == "euclidean_ball":
        d["center"] = t.center.tolist()
        d["radius"] = _f(t.radius)
    elif t.kind == "halfspace":
        d["a"] = t.a.tolist()
        d["b"] = _f(t.b)
    else:
        d["rows"] = t.rows.tolist()
        d["offsets"] = t.offsets.tolist()
    return d


def target_from_dict(d, F):
    kind = d["kind"]
    try:
        if kind == "points":
            return TargetSet.point_set(d["points"])
        if kind == "vpolytope":
            return TargetSet.vpolytope(d["vertices"])
        if kind == "extended_ball":
            return TargetSet.extended_ball(d["center"], d["s"], F)
        if kind == "euclidean_ball":
            return TargetSet.euclidean_ball(d["center"], d["radius"])
        if kind == "halfspace":
            return TargetSet.halfspace(d["a"], d["b"])
        if kind == "hpolytope":
            return TargetSet.hpolytope(d["rows"], d["offsets"])
    except KeyError as e:
        raise SchemaError(f"target of kind {kind!r} is missing field {e}") from None
    raise SchemaError(f"unknown target kind {kind!r}")


def constraint_to_dict(S):
    d = {"kind": S.kind}
    if S.kind == "box":
        d["lo"] = S.lo.tolist()
        d["hi"] = S.hi.tolist()
    elif S.kind == "euclidean_ball":
        d["center"] = S.center.tolist()
        d["radius"] = _f(S.radius)
    elif S.kind == "halfspace":
        d["a"] = S.a.tolist()
        d["b"] = _f(S.b)
    elif S.kind == "hpolytope":
        d["rows"] = S.rows.tolist()
        d["offsets"] = S.offsets.tolist()
    return d


def constraint_from_dict(d, dim):
    kind = d["kind"]
    try:
        if kind == "whole":
            return ConstraintSet.whole(dim)
        if kind == "box":
            return ConstraintSet.box(d["lo"], d["hi"])
        if kind == "euclidean_ball":
            return ConstraintSet.euclidean_ball(d["center"], d["radius"])
        if kind == "halfspace":
            return ConstraintSet.halfspace(d["a"], d["b"])
        if kind == "hpolytope":
            return ConstraintSet.hpolytope(d["rows"], d["offsets"])
    except KeyError as e:
        raise SchemaError(f"constraint of kind {kind!r} is missing field {e}") from None
    raise SchemaError(f"unknown constraint kind {kind!r}")


def problem_to_dict(P):
    return {
        "dim": P.dim,
        "dynamics": dynamics_to_dict(P.dynamics),
        "enclose": [target_to_dict(t) for t in P.enclose],
        "intersect": [target_to_dict(t) for t in P.intersect],
        "constraint": constraint_to_dict(P.constraint),
        "objective": P.objective,
    }


def problem_from_dict(d):
    """Validate and build a ProblemInstance; any defect raises SchemaError."""
    try:
        jsonschema.validate(d, PROBLEM_SCHEMA)
    except jsonschema.ValidationError as e:
        raise SchemaError(f"problem file: {e.message}") from None
    dim = d["dim"]
    try:
        F = dynamics_from_dict(d["dynamics"], dim)
        enclose = [target_from_dict(t, F) for t in d.get("enclose", [])]
        intersect = [target_from_dict(t, F) for t in d.get("intersect", [])]
        S = constraint_from_dict(d.get("constraint", {"kind": "whole"}), dim)
        return ProblemInstance(dim, F, enclose, intersect, S, d.get("objective", "minmax"))
    except SchemaError:
        raise
    except (GaugeballError, ValueError) as e:
        raise SchemaError(str(e)) from None


def dumps(obj):
    """Deterministic JSON text; floats use the shortest round-trip repr."""
    return json.dumps(obj, indent=2) + "\n"


def load_problem(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: invalid JSON ({e})") from None
    return problem_from_dict(data)


def save_problem(P, path):
    with open(path, "w") as fh:
        fh.write(dumps(problem_to_dict(P)))
