"""Multi-objective search over refactoring sequences."""

from .algorithms import ParetoArchive, run
from .core import (
    ALGORITHM_NAMES,
    OBJECTIVE_NAMES,
    Evaluator,
    FitnessVector,
    ParetoFront,
    Provenance,
    SearchConfig,
    crowding_distance,
    default_max_evaluations,
    dominates,
    fast_nondominated_sort,
    resolve_algorithm,
    tuple_dominates,
)
from .operators import (
    ModelSampler,
    mutate,
    random_op,
    random_solution,
    single_point_crossover,
)

__all__ = [
    "ALGORITHM_NAMES",
    "OBJECTIVE_NAMES",
    "Evaluator",
    "FitnessVector",
    "ModelSampler",
    "ParetoArchive",
    "ParetoFront",
    "Provenance",
    "SearchConfig",
    "crowding_distance",
    "default_max_evaluations",
    "dominates",
    "fast_nondominated_sort",
    "mutate",
    "random_op",
    "random_solution",
    "resolve_algorithm",
    "run",
    "single_point_crossover",
    "tuple_dominates",
]
