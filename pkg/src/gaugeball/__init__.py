"""Generalized Sylvester (smallest enclosing / intersecting gauge ball) and
Fermat-Torricelli problems under Minkowski gauge dynamics."""

from .constraints import ConstraintSet, project_constraint
from .errors import DimensionError, GaugeballError, SchemaError, UnsupportedCombination
from .gauge import DynamicsSet, contains, gauge, gauge_subgradient, support
from .objectives import (
    ProblemInstance,
    eval_G,
    eval_H,
    eval_K,
    level_set_sandwich_check,
    objective_value,
)
from .oracle import GridSpec, grid_minimize, sample_time_functions
from .serialize import load_problem, problem_from_dict, problem_to_dict, save_problem
from .solver import (
    Solution,
    SolverConfig,
    SylvesterCertificate,
    existence_check,
    minimize,
    uniqueness_check,
)
from .targets import TargetSet, farthest_projection, membership, nearest_projection
from .timefns import TimeFnEval, maximal_time, minimal_time

__version__ = "0.1.0"
