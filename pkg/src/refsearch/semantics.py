"""Semantic coherence between the class pairs of a refactoring sequence.

Two reconstructions feed one blended score per class pair: a vocabulary
similarity (cosine over identifier token frequencies) and a dependency
similarity (mean Jaccard of shared call-graph neighbor sets).  The
sequence objective is the mean score over the operations that actually
applied, judged against the pre-application model: coherence describes
the code a reviewer sees, not the code after the change.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass

from .code_model import CallGraph, ClassDecl, CodeModel
from .errors import ConfigError
from .refactoring import RefactoringOp

_TOKEN_RE = re.compile(r"[A-Z]+(?=[A-Z][a-z0-9])|[A-Z]?[a-z0-9]+|[A-Z]+")


@dataclass(frozen=True)
class SemanticParams:
    """Blend weight for dependency vs vocabulary similarity."""

    alpha: float = 0.8

    def validate(self) -> None:
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError(f"alpha must be in [0, 1], got {self.alpha}")


def split_identifier(text: str) -> list[str]:
    """Lowercased camelCase/underscore tokens, single characters dropped."""
    tokens = []
    for chunk in text.split("_"):
        for part in _TOKEN_RE.findall(chunk):
            low = part.lower()
            if len(low) >= 2:
                tokens.append(low)
    return tokens


def class_vocabulary(cls: ClassDecl) -> Counter:
    counts: Counter = Counter(split_identifier(cls.name))
    for f in cls.fields:
        counts.update(split_identifier(f.name))
    for m in cls.methods:
        counts.update(split_identifier(m.name))
    return counts


def _cosine(a: Counter, b: Counter) -> float:
    if not a or not b:
        return 0.0
    dot = sum(count * b[token] for token, count in a.items())
    if dot == 0:
        return 0.0
    norm_a = math.sqrt(sum(c * c for c in a.values()))
    norm_b = math.sqrt(sum(c * c for c in b.values()))
    return dot / (norm_a * norm_b)


def vocabulary_similarity(c1: ClassDecl, c2: ClassDecl) -> float:
    return _cosine(class_vocabulary(c1), class_vocabulary(c2))


def _jaccard(a: set[str], b: set[str]) -> float:
    # Two empty neighbor sets share nothing measurable: defined as 0.
    union = a | b
    if not union:
        return 0.0
    return len(a & b) / len(union)


def _neighbor_sets(cls: ClassDecl, graph: CallGraph) -> tuple[set[str], set[str]]:
    members = cls.member_ids()
    out = {e.target for e in graph.edges if e.source in members}
    inn = {e.source for e in graph.edges if e.target in members}
    return out, inn


def dependency_similarity(c1: ClassDecl, c2: ClassDecl, graph: CallGraph) -> float:
    out1, in1 = _neighbor_sets(c1, graph)
    out2, in2 = _neighbor_sets(c2, graph)
    return (_jaccard(out1, out2) + _jaccard(in1, in2)) / 2.0


def coherence_score(
    c1: ClassDecl, c2: ClassDecl, graph: CallGraph, params: SemanticParams
) -> float:
    """Blended similarity of one class pair, in [0, 1]."""
    ds = dependency_similarity(c1, c2, graph)
    vs = vocabulary_similarity(c1, c2)
    return params.alpha * ds + (1.0 - params.alpha) * vs


def sequence_coherence(
    effective: list[RefactoringOp],
    model: CodeModel,
    graph: CallGraph,
    params: SemanticParams,
) -> float:
    """Mean pair coherence over the applied operations of a sequence.

    `model` and `graph` are the pre-application state.  An empty
    effective list scores 0.
    """
    if not effective:
        return 0.0
    total = 0.0
    for op in effective:
        total += coherence_score(
            model.classes[op.class1], model.classes[op.class2], graph, params
        )
    return total / len(effective)
