"""Variation operators: random genomes, crossover, and mutation.

Parameter draws are uniform over typed candidates from the loaded model:
class parameters come from the internal classes, the member parameter
from the source class's members of the required kind.  Applicability is
deliberately not guaranteed; infeasible genes act as Null at evaluation.
A gene falls back to Null only when no typed draw is possible at all.
"""

from __future__ import annotations

import random

from ..code_model import CodeModel
from ..refactoring import (
    ALL_KINDS,
    NULL_OP,
    RefactoringKind,
    RefactoringOp,
    Solution,
)
from .core import SearchConfig


class ModelSampler:
    """Deterministic candidate pools for drawing gene parameters."""

    def __init__(self, model: CodeModel) -> None:
        self.class_ids = sorted(model.internal_ids())
        self.method_ids = {
            cid: [m.id for m in model.classes[cid].methods] for cid in self.class_ids
        }
        self.field_ids = {
            cid: [f.id for f in model.classes[cid].fields] for cid in self.class_ids
        }

    def member_pool(self, kind: RefactoringKind, class_id: str) -> list[str]:
        if kind in (
            RefactoringKind.MOVE_METHOD,
            RefactoringKind.PULL_UP_METHOD,
            RefactoringKind.PUSH_DOWN_METHOD,
        ):
            return self.method_ids.get(class_id, [])
        return self.field_ids.get(class_id, [])


def random_op(sampler: ModelSampler, rng: random.Random) -> RefactoringOp:
    """One random gene; kinds are drawn uniformly, Null included."""
    kind = rng.choice(ALL_KINDS)
    return _draw_params(kind, sampler, rng)


def _draw_params(
    kind: RefactoringKind, sampler: ModelSampler, rng: random.Random
) -> RefactoringOp:
    if kind is RefactoringKind.NULL or not sampler.class_ids:
        return NULL_OP
    class1 = rng.choice(sampler.class_ids)
    class2 = rng.choice(sampler.class_ids)
    if kind is RefactoringKind.INLINE_CLASS:
        return RefactoringOp(kind, class1, class2)
    pool = sampler.member_pool(kind, class1)
    if not pool:
        return NULL_OP
    return RefactoringOp(kind, class1, class2, rng.choice(pool))


def random_solution(
    model_or_sampler: CodeModel | ModelSampler,
    config: SearchConfig,
    rng: random.Random,
) -> Solution:
    sampler = (
        model_or_sampler
        if isinstance(model_or_sampler, ModelSampler)
        else ModelSampler(model_or_sampler)
    )
    genes = tuple(random_op(sampler, rng) for _ in range(config.max_sequence_length))
    return Solution(genes=genes)


def single_point_crossover(
    parent1: Solution, parent2: Solution, rng: random.Random
) -> tuple[Solution, Solution]:
    """Exchange gene tails below a cut point drawn from 1..length-1."""
    length = len(parent1.genes)
    if length != len(parent2.genes):
        raise ValueError("parents must have equal genome length")
    if length < 2:
        return parent1.clone(), parent2.clone()
    cut = rng.randint(1, length - 1)
    child1 = Solution(genes=parent1.genes[:cut] + parent2.genes[cut:])
    child2 = Solution(genes=parent2.genes[:cut] + parent1.genes[cut:])
    return child1, child2


def _gene_edits(op: RefactoringOp) -> list[str]:
    if op.is_null:
        return ["kind"]
    edits = ["kind", "class1", "class2"]
    if op.member is not None:
        edits.append("member")
    return edits


def _edit_gene(
    op: RefactoringOp, sampler: ModelSampler, rng: random.Random
) -> RefactoringOp:
    edit = rng.choice(_gene_edits(op))
    if edit == "kind":
        return _draw_params(rng.choice(ALL_KINDS), sampler, rng)
    if edit == "class1":
        return RefactoringOp(op.kind, rng.choice(sampler.class_ids), op.class2, op.member)
    if edit == "class2":
        return RefactoringOp(op.kind, op.class1, rng.choice(sampler.class_ids), op.member)
    pool = sampler.member_pool(op.kind, op.class1)
    if not pool:
        return op
    return RefactoringOp(op.kind, op.class1, op.class2, rng.choice(pool))


def mutate(
    solution: Solution,
    model_or_sampler: CodeModel | ModelSampler,
    config: SearchConfig,
    rng: random.Random,
) -> Solution:
    """Independently rewrite each gene with the mutation probability.

    A firing gene receives one uniformly chosen edit: replace the kind
    (parameters redrawn) or redraw a single parameter.  Draws may repeat
    the current value, so a touched gene can come back unchanged.
    """
    sampler = (
        model_or_sampler
        if isinstance(model_or_sampler, ModelSampler)
        else ModelSampler(model_or_sampler)
    )
    genes = []
    for op in solution.genes:
        if sampler.class_ids and rng.random() < config.mutation_probability:
            genes.append(_edit_gene(op, sampler, rng))
        else:
            genes.append(op)
    return Solution(genes=tuple(genes))
