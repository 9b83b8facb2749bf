"""Core machinery shared by all search algorithms.

Fitness vectors hold the three maximized objectives: quality gain,
semantic coherence, and review availability.  Dominance, non-dominated
sorting, and crowding distance operate on plain float tuples so they can
be projected onto a subset of objectives (the availability objective can
be dropped from dominance while still being computed for reporting).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace

from ..code_model import CallGraph, CodeModel
from ..errors import ConfigError
from ..quality import attribute_shift, compute_attributes, compute_metrics
from ..refactoring import Solution, apply_sequence
from ..review import DeveloperProfile, ReviewParams, recommend_reviewers
from ..semantics import SemanticParams, coherence_score

OBJECTIVE_NAMES = ("qual", "sem", "ra")
ALGORITHM_NAMES = ("nsga2", "spea2", "ibea", "mocell", "random_search")
ALGORITHM_ALIASES = {"random": "random_search", "nsga-ii": "nsga2"}


@dataclass(frozen=True)
class FitnessVector:
    qual: float
    sem: float
    ra: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.qual, self.sem, self.ra)

    def project(self, objectives: tuple[str, ...]) -> tuple[float, ...]:
        return tuple(getattr(self, name) for name in objectives)


def resolve_algorithm(name: str) -> str:
    canonical = ALGORITHM_ALIASES.get(name, name)
    if canonical not in ALGORITHM_NAMES:
        raise ConfigError(f"unknown algorithm: {name}")
    return canonical


def default_max_evaluations(class_count: int) -> int:
    """Default evaluation budget: one hundred per class in the model."""
    return 100 * class_count


@dataclass(frozen=True)
class SearchConfig:
    max_evaluations: int
    population_size: int = 100
    crossover_probability: float = 0.90
    mutation_probability: float = 0.05
    max_sequence_length: int = 5
    seed: int = 1
    algorithm: str = "nsga2"
    objectives: tuple[str, ...] = OBJECTIVE_NAMES

    def validate(self) -> None:
        if self.population_size < 2 or self.population_size % 2 != 0:
            raise ConfigError(
                f"population size must be even and >= 2, got {self.population_size}"
            )
        for name, p in (
            ("crossover probability", self.crossover_probability),
            ("mutation probability", self.mutation_probability),
        ):
            if not 0.0 <= p <= 1.0:
                raise ConfigError(f"{name} must be in [0, 1], got {p}")
        if self.max_sequence_length < 1:
            raise ConfigError(
                f"max sequence length must be >= 1, got {self.max_sequence_length}"
            )
        if self.max_evaluations < self.population_size:
            raise ConfigError(
                "evaluation budget must cover at least one population "
                f"({self.max_evaluations} < {self.population_size})"
            )
        resolve_algorithm(self.algorithm)
        if not self.objectives or any(
            o not in OBJECTIVE_NAMES for o in self.objectives
        ):
            raise ConfigError(f"bad objective subset: {self.objectives}")

    def canonical(self) -> "SearchConfig":
        return replace(self, algorithm=resolve_algorithm(self.algorithm))


@dataclass(frozen=True)
class Provenance:
    algorithm: str
    seed: int
    evaluations: int


@dataclass
class ParetoFront:
    solutions: list[Solution] = field(default_factory=list)
    provenance: Provenance | None = None


def tuple_dominates(a: tuple[float, ...], b: tuple[float, ...]) -> bool:
    """True when a is at least as good everywhere and better somewhere."""
    better = False
    for x, y in zip(a, b):
        if x < y:
            return False
        if x > y:
            better = True
    return better


def dominates(
    a: FitnessVector, b: FitnessVector, objectives: tuple[str, ...] = OBJECTIVE_NAMES
) -> bool:
    return tuple_dominates(a.project(objectives), b.project(objectives))


def fast_nondominated_sort(fitnesses: list[tuple[float, ...]]) -> list[list[int]]:
    """Partition indices into fronts of mutually non-dominated points.

    Front 0 is the non-dominated set of the whole input; each later
    front is non-dominated once the earlier ones are removed.
    """
    n = len(fitnesses)
    dominated_by: list[list[int]] = [[] for _ in range(n)]
    domination_count = [0] * n
    for i in range(n):
        fi = fitnesses[i]
        for j in range(i + 1, n):
            fj = fitnesses[j]
            i_better = j_better = False
            for x, y in zip(fi, fj):
                if x > y:
                    i_better = True
                elif y > x:
                    j_better = True
            if i_better and not j_better:
                dominated_by[i].append(j)
                domination_count[j] += 1
            elif j_better and not i_better:
                dominated_by[j].append(i)
                domination_count[i] += 1

    fronts: list[list[int]] = []
    current = [i for i in range(n) if domination_count[i] == 0]
    while current:
        fronts.append(current)
        upcoming = []
        for i in current:
            for j in dominated_by[i]:
                domination_count[j] -= 1
                if domination_count[j] == 0:
                    upcoming.append(j)
        current = sorted(upcoming)
    return fronts


def crowding_distance(fitnesses: list[tuple[float, ...]]) -> list[float]:
    """Crowding distances for one front; boundary points are infinite."""
    n = len(fitnesses)
    if n == 0:
        return []
    if n <= 2:
        return [float("inf")] * n
    distance = [0.0] * n
    n_obj = len(fitnesses[0])
    for k in range(n_obj):
        order = sorted(range(n), key=lambda i: fitnesses[i][k])
        lo = fitnesses[order[0]][k]
        hi = fitnesses[order[-1]][k]
        distance[order[0]] = float("inf")
        distance[order[-1]] = float("inf")
        if hi == lo:
            continue
        span = hi - lo
        for pos in range(1, n - 1):
            i = order[pos]
            if distance[i] == float("inf"):
                continue
            gap = fitnesses[order[pos + 1]][k] - fitnesses[order[pos - 1]][k]
            distance[i] += gap / span
    return distance


class Evaluator:
    """Computes the three objectives for a solution against fixed inputs.

    The pre-application quality attributes, class coherence scores, and
    reviewer profiles depend only on the loaded inputs, so they are
    computed once and reused across evaluations.  Each call increments
    the evaluation counter by exactly one; solutions are evaluated in
    the order they are passed in.
    """

    def __init__(
        self,
        model: CodeModel,
        graph: CallGraph,
        profiles: dict[str, DeveloperProfile],
        review_params: ReviewParams,
        semantic_params: SemanticParams,
    ) -> None:
        review_params.validate()
        semantic_params.validate()
        self.model = model
        self.graph = graph
        self.profiles = profiles
        self.review_params = review_params
        self.semantic_params = semantic_params
        self.evaluations = 0
        self._base_attributes = compute_attributes(compute_metrics(model, graph))
        self._pair_coherence: dict[tuple[str, str], float] = {}

    def _coherence(self, class1: str, class2: str) -> float:
        key = (class1, class2)
        cached = self._pair_coherence.get(key)
        if cached is None:
            cached = coherence_score(
                self.model.classes[class1],
                self.model.classes[class2],
                self.graph,
                self.semantic_params,
            )
            self._pair_coherence[key] = cached
        return cached

    def evaluate(self, solution: Solution) -> Solution:
        self.evaluations += 1
        after_model, after_graph, effective = apply_sequence(
            solution, self.model, self.graph
        )
        solution.effective_count = len(effective)
        after = compute_attributes(compute_metrics(after_model, after_graph))
        qual = attribute_shift(self._base_attributes, after)
        if effective:
            sem = sum(self._coherence(op.class1, op.class2) for op in effective)
            sem /= len(effective)
        else:
            sem = 0.0
        ra, group = recommend_reviewers(
            effective, self.model, self.profiles, self.review_params
        )
        solution.fitness = FitnessVector(qual, sem, ra)
        solution.reviewers = group
        return solution


def make_rng(seed: int) -> random.Random:
    return random.Random(seed)
