"""The five search algorithms behind one `run` entry point.

All algorithms share the same genome, variation operators, evaluator,
and evaluation budget accounting; they differ only in selection and
archiving.  Each run is driven by a single seeded random generator, so
equal inputs and seed reproduce the front exactly.  The budget is a hard
cap: no algorithm evaluates more than `max_evaluations` solutions.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_left, insort

from ..code_model import CallGraph, CodeModel
from ..refactoring import Solution
from ..review import DeveloperProfile, ReviewParams
from ..semantics import SemanticParams
from .core import (
    Evaluator,
    ParetoFront,
    Provenance,
    SearchConfig,
    crowding_distance,
    fast_nondominated_sort,
    resolve_algorithm,
    tuple_dominates,
)
from .operators import ModelSampler, mutate, random_solution, single_point_crossover

IBEA_KAPPA = 0.05
# k-th nearest neighbor index for the density estimate follows the usual
# square-root-of-population rule.


def _fits(pop: list[Solution], objectives: tuple[str, ...]) -> list[tuple[float, ...]]:
    return [s.fitness.project(objectives) for s in pop]


class ParetoArchive:
    """Bounded list of mutually non-dominated solutions.

    Dominated entries are evicted on insert; exact fitness duplicates
    are rejected to keep the bound meaningful.  Overflow drops the most
    crowded member (smallest crowding distance, interior points first).
    """

    def __init__(self, capacity: int | None, objectives: tuple[str, ...]) -> None:
        self.capacity = capacity
        self.objectives = objectives
        self.items: list[Solution] = []
        self._keys: list[tuple[float, ...]] = []

    def add(self, solution: Solution) -> bool:
        key = solution.fitness.project(self.objectives)
        keep_items: list[Solution] = []
        keep_keys: list[tuple[float, ...]] = []
        for item, existing in zip(self.items, self._keys):
            if existing == key or tuple_dominates(existing, key):
                return False
            if not tuple_dominates(key, existing):
                keep_items.append(item)
                keep_keys.append(existing)
        keep_items.append(solution)
        keep_keys.append(key)
        self.items = keep_items
        self._keys = keep_keys
        if self.capacity is not None and len(self.items) > self.capacity:
            distances = crowding_distance(self._keys)
            drop = min(range(len(distances)), key=lambda i: (distances[i], i))
            del self.items[drop]
            del self._keys[drop]
        return True


def _rank_and_crowding(
    pop: list[Solution], objectives: tuple[str, ...]
) -> tuple[list[int], list[float]]:
    fits = _fits(pop, objectives)
    fronts = fast_nondominated_sort(fits)
    rank = [0] * len(pop)
    crowd = [0.0] * len(pop)
    for level, front in enumerate(fronts):
        for i in front:
            rank[i] = level
        for i, d in zip(front, crowding_distance([fits[i] for i in front])):
            crowd[i] = d
    return rank, crowd


def _offspring(
    pop: list[Solution],
    count: int,
    pick: "callable",
    sampler: ModelSampler,
    config: SearchConfig,
    rng: random.Random,
) -> list[Solution]:
    children: list[Solution] = []
    while len(children) < count:
        p1, p2 = pop[pick()], pop[pick()]
        if rng.random() < config.crossover_probability:
            c1, c2 = single_point_crossover(p1, p2, rng)
        else:
            c1, c2 = p1.clone(), p2.clone()
        children.append(mutate(c1, sampler, config, rng))
        if len(children) < count:
            children.append(mutate(c2, sampler, config, rng))
    return children


def _environmental_selection(
    candidates: list[Solution], size: int, objectives: tuple[str, ...]
) -> list[Solution]:
    fits = _fits(candidates, objectives)
    fronts = fast_nondominated_sort(fits)
    chosen: list[Solution] = []
    for front in fronts:
        if len(chosen) + len(front) <= size:
            chosen.extend(candidates[i] for i in front)
            if len(chosen) == size:
                break
            continue
        distances = crowding_distance([fits[i] for i in front])
        order = sorted(range(len(front)), key=lambda i: -distances[i])
        chosen.extend(candidates[front[i]] for i in order[: size - len(chosen)])
        break
    return chosen


def _nsga2(
    evaluator: Evaluator,
    sampler: ModelSampler,
    config: SearchConfig,
    rng: random.Random,
) -> list[Solution]:
    size = config.population_size
    pop = [
        evaluator.evaluate(random_solution(sampler, config, rng)) for _ in range(size)
    ]
    budget = config.max_evaluations - size
    while budget > 0:
        rank, crowd = _rank_and_crowding(pop, config.objectives)

        def pick() -> int:
            a = rng.randrange(size)
            b = rng.randrange(size)
            if (rank[b], -crowd[b]) < (rank[a], -crowd[a]):
                return b
            return a

        children = _offspring(pop, min(size, budget), pick, sampler, config, rng)
        for child in children:
            evaluator.evaluate(child)
        budget -= len(children)
        pop = _environmental_selection(pop + children, size, config.objectives)
    return pop


def _spea2_fitness(fits: list[tuple[float, ...]]) -> list[float]:
    n = len(fits)
    strength = [0] * n
    dominators: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if tuple_dominates(fits[i], fits[j]):
                strength[i] += 1
                dominators[j].append(i)
            elif tuple_dominates(fits[j], fits[i]):
                strength[j] += 1
                dominators[i].append(j)
    raw = [sum(strength[d] for d in dominators[i]) for i in range(n)]
    k = max(1, int(math.sqrt(n)))
    fitness = []
    for i in range(n):
        dists = sorted(math.dist(fits[i], fits[j]) for j in range(n) if j != i)
        sigma = dists[min(k, len(dists)) - 1] if dists else 0.0
        fitness.append(raw[i] + 1.0 / (sigma + 2.0))
    return fitness


def _spea2_truncate(
    members: list[Solution], fits: list[tuple[float, ...]], capacity: int
) -> list[Solution]:
    # Iteratively drop the member closest to its neighbors, comparing
    # whole sorted distance vectors lexicographically.
    alive = list(range(len(members)))
    dist = [[math.dist(fits[i], fits[j]) for j in alive] for i in alive]
    sorted_dists = []
    for i in alive:
        row = sorted(dist[i][j] for j in alive if j != i)
        sorted_dists.append(row)
    dropped: set[int] = set()
    while len(alive) - len(dropped) > capacity:
        best = None
        for i in alive:
            if i in dropped:
                continue
            if best is None or sorted_dists[i] < sorted_dists[best]:
                best = i
        dropped.add(best)
        for i in alive:
            if i in dropped or i == best:
                continue
            row = sorted_dists[i]
            idx = bisect_left(row, dist[i][best])
            if idx < len(row):
                row.pop(idx)
    return [members[i] for i in alive if i not in dropped]


def _spea2(
    evaluator: Evaluator,
    sampler: ModelSampler,
    config: SearchConfig,
    rng: random.Random,
) -> list[Solution]:
    size = config.population_size
    pop = [
        evaluator.evaluate(random_solution(sampler, config, rng)) for _ in range(size)
    ]
    budget = config.max_evaluations - size
    archive: list[Solution] = []
    while True:
        union = pop + archive
        fits = _fits(union, config.objectives)
        fitness = _spea2_fitness(fits)
        nondominated = [i for i in range(len(union)) if fitness[i] < 1.0]
        if len(nondominated) > size:
            archive = _spea2_truncate(
                [union[i] for i in nondominated],
                [fits[i] for i in nondominated],
                size,
            )
        else:
            archive = [union[i] for i in nondominated]
            if len(archive) < size:
                rest = sorted(
                    (i for i in range(len(union)) if fitness[i] >= 1.0),
                    key=lambda i: fitness[i],
                )
                archive = archive + [
                    union[i] for i in rest[: size - len(archive)]
                ]
        if budget <= 0:
            break
        arc_fitness = _spea2_fitness(_fits(archive, config.objectives))

        def pick() -> int:
            a = rng.randrange(len(archive))
            b = rng.randrange(len(archive))
            return b if arc_fitness[b] < arc_fitness[a] else a

        children = _offspring(archive, min(size, budget), pick, sampler, config, rng)
        for child in children:
            evaluator.evaluate(child)
        budget -= len(children)
        pop = children
    front = fast_nondominated_sort(_fits(archive, config.objectives))
    return [archive[i] for i in front[0]] if front else []


def _ibea_indicators(
    fits: list[tuple[float, ...]],
) -> tuple[list[list[float]], float]:
    n = len(fits)
    n_obj = len(fits[0])
    lows = [min(f[k] for f in fits) for k in range(n_obj)]
    highs = [max(f[k] for f in fits) for k in range(n_obj)]
    spans = [hi - lo if hi > lo else 1.0 for lo, hi in zip(lows, highs)]
    scaled = [
        tuple((f[k] - lows[k]) / spans[k] for k in range(n_obj)) for f in fits
    ]
    indicator = [[0.0] * n for _ in range(n)]
    max_abs = 0.0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            # Smallest shift of i that weakly dominates j (maximization).
            eps = max(sj - si for si, sj in zip(scaled[i], scaled[j]))
            indicator[i][j] = eps
            max_abs = max(max_abs, abs(eps))
    return indicator, (max_abs if max_abs > 0 else 1.0)


def _ibea_fitness(indicator: list[list[float]], scale: float) -> list[float]:
    n = len(indicator)
    fitness = [0.0] * n
    for i in range(n):
        total = 0.0
        for j in range(n):
            if j != i:
                total -= math.exp(-indicator[j][i] / (scale * IBEA_KAPPA))
        fitness[i] = total
    return fitness


def _ibea_reduce(
    union: list[Solution], size: int, objectives: tuple[str, ...]
) -> list[Solution]:
    fits = _fits(union, objectives)
    indicator, scale = _ibea_indicators(fits)
    fitness = _ibea_fitness(indicator, scale)
    alive = list(range(len(union)))
    while len(alive) > size:
        worst = min(alive, key=lambda i: (fitness[i], i))
        alive.remove(worst)
        for i in alive:
            fitness[i] += math.exp(-indicator[worst][i] / (scale * IBEA_KAPPA))
    return [union[i] for i in alive]


def _ibea(
    evaluator: Evaluator,
    sampler: ModelSampler,
    config: SearchConfig,
    rng: random.Random,
) -> list[Solution]:
    size = config.population_size
    pop = [
        evaluator.evaluate(random_solution(sampler, config, rng)) for _ in range(size)
    ]
    budget = config.max_evaluations - size
    while budget > 0:
        indicator, scale = _ibea_indicators(_fits(pop, config.objectives))
        fitness = _ibea_fitness(indicator, scale)

        def pick() -> int:
            a = rng.randrange(len(pop))
            b = rng.randrange(len(pop))
            return b if fitness[b] > fitness[a] else a

        children = _offspring(pop, min(size, budget), pick, sampler, config, rng)
        for child in children:
            evaluator.evaluate(child)
        budget -= len(children)
        pop = _ibea_reduce(pop + children, size, config.objectives)
    return pop


def _grid_dims(size: int) -> tuple[int, int]:
    rows = max(1, math.isqrt(size))
    while size % rows != 0:
        rows -= 1
    return rows, size // rows


def _mocell(
    evaluator: Evaluator,
    sampler: ModelSampler,
    config: SearchConfig,
    rng: random.Random,
) -> list[Solution]:
    size = config.population_size
    rows, cols = _grid_dims(size)
    pop = [
        evaluator.evaluate(random_solution(sampler, config, rng)) for _ in range(size)
    ]
    budget = config.max_evaluations - size
    archive = ParetoArchive(size, config.objectives)
    for s in pop:
        archive.add(s)

    def neighbors(idx: int) -> list[int]:
        r, c = divmod(idx, cols)
        return [
            ((r - 1) % rows) * cols + c,
            ((r + 1) % rows) * cols + c,
            r * cols + (c - 1) % cols,
            r * cols + (c + 1) % cols,
        ]

    def tournament(a: Solution, b: Solution) -> Solution:
        fa = a.fitness.project(config.objectives)
        fb = b.fitness.project(config.objectives)
        if tuple_dominates(fa, fb):
            return a
        if tuple_dominates(fb, fa):
            return b
        return a if rng.random() < 0.5 else b

    while budget > 0:
        next_pop = list(pop)
        for idx in range(size):
            if budget <= 0:
                break
            hood = neighbors(idx)
            p1 = tournament(pop[rng.choice(hood)], pop[rng.choice(hood)])
            if len(archive.items) >= 2:
                p2 = tournament(rng.choice(archive.items), rng.choice(archive.items))
            elif archive.items:
                p2 = archive.items[0]
            else:
                p2 = pop[rng.choice(hood)]
            if rng.random() < config.crossover_probability:
                child, _ = single_point_crossover(p1, p2, rng)
            else:
                child = p1.clone()
            child = mutate(child, sampler, config, rng)
            evaluator.evaluate(child)
            budget -= 1
            current = pop[idx].fitness.project(config.objectives)
            if not tuple_dominates(current, child.fitness.project(config.objectives)):
                next_pop[idx] = child
            archive.add(child)
        pop = next_pop
    return list(archive.items)


def _random_search(
    evaluator: Evaluator,
    sampler: ModelSampler,
    config: SearchConfig,
    rng: random.Random,
) -> list[Solution]:
    archive = ParetoArchive(None, config.objectives)
    for _ in range(config.max_evaluations):
        archive.add(evaluator.evaluate(random_solution(sampler, config, rng)))
    return list(archive.items)


_DISPATCH = {
    "nsga2": _nsga2,
    "spea2": _spea2,
    "ibea": _ibea,
    "mocell": _mocell,
    "random_search": _random_search,
}


def _solution_sort_key(solution: Solution) -> tuple:
    return (
        -solution.fitness.qual,
        -solution.fitness.sem,
        -solution.fitness.ra,
        tuple(str(op.to_dict()) for op in solution.genes),
    )


def run(
    model: CodeModel,
    graph: CallGraph,
    profiles: dict[str, DeveloperProfile],
    review_params: ReviewParams,
    semantic_params: SemanticParams,
    config: SearchConfig,
) -> ParetoFront:
    """Run one seeded search and return its non-dominated front.

    The front is pairwise non-dominated under the configured objective
    subset and sorted canonically for stable output files.
    """
    config = config.canonical()
    config.validate()
    rng = random.Random(config.seed)
    evaluator = Evaluator(model, graph, profiles, review_params, semantic_params)
    sampler = ModelSampler(model)
    finals = _DISPATCH[config.algorithm](evaluator, sampler, config, rng)

    fits = _fits(finals, config.objectives)
    fronts = fast_nondominated_sort(fits)
    solutions = [finals[i] for i in fronts[0]] if fronts else []
    solutions.sort(key=_solution_sort_key)
    return ParetoFront(
        solutions=solutions,
        provenance=Provenance(config.algorithm, config.seed, evaluator.evaluations),
    )
