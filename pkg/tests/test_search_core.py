from __future__ import annotations

import random

import pytest

from refsearch.errors import ConfigError
from refsearch.refactoring import NULL_OP, RefactoringKind, RefactoringOp, Solution, apply_sequence
from refsearch.review import recommend_reviewers
from refsearch.search.core import (
    Evaluator,
    FitnessVector,
    SearchConfig,
    crowding_distance,
    default_max_evaluations,
    dominates,
    fast_nondominated_sort,
    resolve_algorithm,
    tuple_dominates,
)
from refsearch.semantics import SemanticParams, sequence_coherence
from refsearch.quality import quality_gain

from synth import synth_setup


def test_tuple_dominates_cases():
    assert tuple_dominates((2.0, 1.0), (1.0, 1.0))
    assert tuple_dominates((2.0, 2.0), (1.0, 1.0))
    assert not tuple_dominates((1.0, 1.0), (1.0, 1.0))
    assert not tuple_dominates((2.0, 0.0), (1.0, 1.0))
    assert not tuple_dominates((1.0, 1.0), (2.0, 1.0))


def test_dominates_respects_objective_subset():
    a = FitnessVector(qual=1.0, sem=1.0, ra=0.0)
    b = FitnessVector(qual=0.5, sem=0.5, ra=5.0)
    assert not dominates(a, b)
    assert dominates(a, b, objectives=("qual", "sem"))
    assert dominates(b, a, objectives=("ra",))
    assert a.project(("sem", "qual")) == (1.0, 1.0)


def naive_fronts(points):
    """Peel non-dominated layers with a direct double loop."""
    remaining = set(range(len(points)))
    fronts = []
    while remaining:
        layer = []
        for i in remaining:
            beaten = False
            for j in remaining:
                if j == i:
                    continue
                ge = all(x >= y for x, y in zip(points[j], points[i]))
                gt = any(x > y for x, y in zip(points[j], points[i]))
                if ge and gt:
                    beaten = True
                    break
            if not beaten:
                layer.append(i)
        fronts.append(sorted(layer))
        remaining -= set(layer)
    return fronts


def test_fast_nondominated_sort_hand_case():
    points = [
        (1.0, 1.0),  # dominated by everything above it
        (2.0, 3.0),
        (3.0, 2.0),
        (2.0, 2.0),
        (4.0, 4.0),
    ]
    fronts = fast_nondominated_sort(points)
    assert fronts[0] == [4]
    assert sorted(fronts[1]) == [1, 2]
    assert fronts[2] == [3]
    assert fronts[3] == [0]


def test_fast_nondominated_sort_matches_naive_oracle():
    rng = random.Random(9)
    for _ in range(10):
        # small coordinate alphabet forces plenty of ties and duplicates
        points = [
            (rng.randint(0, 4), rng.randint(0, 4), rng.randint(0, 4))
            for _ in range(50)
        ]
        fast = [sorted(front) for front in fast_nondominated_sort(points)]
        assert fast == naive_fronts(points)


def test_crowding_distance_small_fronts_are_infinite():
    assert crowding_distance([]) == []
    assert crowding_distance([(1.0, 2.0)]) == [float("inf")]
    assert crowding_distance([(1.0, 2.0), (2.0, 1.0)]) == [float("inf")] * 2


def test_crowding_distance_hand_case():
    # interior distances are the normalized neighbour gaps per objective
    points = [(1.0,), (2.0,), (3.0,), (4.0,)]
    dist = crowding_distance(points)
    assert dist[0] == float("inf")
    assert dist[3] == float("inf")
    assert abs(dist[1] - (3.0 - 1.0) / 3.0) < 1e-12
    assert abs(dist[2] - (4.0 - 2.0) / 3.0) < 1e-12


def test_crowding_distance_constant_objective():
    points = [(1.0, 5.0), (1.0, 5.0), (1.0, 5.0)]
    dist = crowding_distance(points)
    assert dist[0] == float("inf")
    assert dist[2] == float("inf")
    assert dist[1] == 0.0


def test_resolve_algorithm_aliases():
    assert resolve_algorithm("nsga2") == "nsga2"
    assert resolve_algorithm("nsga-ii") == "nsga2"
    assert resolve_algorithm("random") == "random_search"
    with pytest.raises(ConfigError):
        resolve_algorithm("tabu")


def test_default_budget_is_one_hundred_per_class():
    assert default_max_evaluations(40) == 4000
    assert default_max_evaluations(1) == 100


def config_cases():
    base = dict(max_evaluations=1000)
    return [
        dict(base, population_size=7),
        dict(base, population_size=0),
        dict(base, crossover_probability=1.5),
        dict(base, mutation_probability=-0.1),
        dict(base, max_sequence_length=0),
        dict(base, max_evaluations=10, population_size=100),
        dict(base, algorithm="tabu"),
        dict(base, objectives=("qual", "cost")),
        dict(base, objectives=()),
    ]


def test_search_config_validation():
    SearchConfig(max_evaluations=1000).validate()
    for bad in config_cases():
        with pytest.raises(ConfigError):
            SearchConfig(**bad).validate()


def test_search_config_canonicalizes_aliases():
    config = SearchConfig(max_evaluations=100, algorithm="random")
    assert config.canonical().algorithm == "random_search"


@pytest.fixture(scope="module")
def small_setup():
    return synth_setup(7)


def test_evaluator_counts_every_call(small_setup):
    model, graph, profiles, rp = small_setup
    ev = Evaluator(model, graph, profiles, rp, SemanticParams())
    assert ev.evaluations == 0
    genome = Solution(genes=(NULL_OP,) * 5)
    for expected in range(1, 4):
        ev.evaluate(Solution(genes=genome.genes))
        assert ev.evaluations == expected


def test_evaluator_null_genome_scores_zero(small_setup):
    model, graph, profiles, rp = small_setup
    ev = Evaluator(model, graph, profiles, rp, SemanticParams())
    result = ev.evaluate(Solution(genes=(NULL_OP,) * 5))
    assert result.effective_count == 0
    assert result.fitness.as_tuple() == (0.0, 0.0, 0.0)
    assert result.reviewers == frozenset()


def test_evaluator_matches_component_functions(small_setup):
    model, graph, profiles, rp = small_setup
    sp = SemanticParams()
    ev = Evaluator(model, graph, profiles, rp, sp)
    genes = (
        RefactoringOp(RefactoringKind.MOVE_METHOD,
                      "OrderService", "OrderRecord", "OrderService.auditOrderTotal"),
        RefactoringOp(RefactoringKind.MOVE_METHOD,
                      "OrderValidator", "OrderRepository", "OrderValidator.checkOrder"),
        NULL_OP,
        RefactoringOp(RefactoringKind.MOVE_METHOD,
                      "OrderService", "OrderRecord", "OrderService.ghost"),
        NULL_OP,
    )
    solution = ev.evaluate(Solution(genes=genes))
    _, _, effective = apply_sequence(Solution(genes=genes), model, graph)
    assert solution.effective_count == len(effective) == 2

    # coherence is judged against the pre-application model
    assert solution.fitness.sem == sequence_coherence(effective, model, graph, sp)
    assert solution.fitness.qual == quality_gain(model, graph, Solution(genes=genes))
    ra, group = recommend_reviewers(effective, model, profiles, rp)
    assert solution.fitness.ra == ra
    assert solution.reviewers == group


def test_evaluator_caches_nothing_across_states(small_setup):
    # two genomes moving the same pair in different orders still get
    # pair scores from the shared pre-application state
    model, graph, profiles, rp = small_setup
    sp = SemanticParams()
    ev = Evaluator(model, graph, profiles, rp, sp)
    move = RefactoringOp(RefactoringKind.MOVE_METHOD,
                         "OrderService", "OrderRecord", "OrderService.auditOrderTotal")
    one = ev.evaluate(Solution(genes=(move, NULL_OP, NULL_OP, NULL_OP, NULL_OP)))
    two = ev.evaluate(Solution(genes=(NULL_OP, NULL_OP, NULL_OP, NULL_OP, move)))
    assert one.fitness == two.fitness
