"""Design-level refactoring operations and solution genomes.

A solution is a fixed-length vector of refactoring genes applied left to
right.  Genes whose preconditions fail against the current model state
stay in the genome but apply as no-ops, exactly like the explicit Null
gene; there is no repair step.  Applying an operation never mutates its
inputs: a new model is returned with unchanged classes shared.

Member ids are stable across moves, so the call graph never needs
rewriting; edges simply re-home with their members.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

from .code_model import CallGraph, ClassDecl, CodeModel


class RefactoringKind(str, Enum):
    INLINE_CLASS = "InlineClass"
    MOVE_METHOD = "MoveMethod"
    PULL_UP_METHOD = "PullUpMethod"
    PUSH_DOWN_METHOD = "PushDownMethod"
    MOVE_FIELD = "MoveField"
    PULL_UP_FIELD = "PullUpField"
    PUSH_DOWN_FIELD = "PushDownField"
    NULL = "Null"


METHOD_KINDS = (
    RefactoringKind.MOVE_METHOD,
    RefactoringKind.PULL_UP_METHOD,
    RefactoringKind.PUSH_DOWN_METHOD,
)
FIELD_KINDS = (
    RefactoringKind.MOVE_FIELD,
    RefactoringKind.PULL_UP_FIELD,
    RefactoringKind.PUSH_DOWN_FIELD,
)
ALL_KINDS = tuple(RefactoringKind)


@dataclass(frozen=True)
class RefactoringOp:
    """One gene: an operation kind plus its class and member parameters.

    InlineClass takes two classes and no member; the six member-level
    kinds take a source class, a target class, and a member id; Null
    takes nothing.
    """

    kind: RefactoringKind
    class1: str | None = None
    class2: str | None = None
    member: str | None = None

    def __post_init__(self) -> None:
        if self.kind is RefactoringKind.NULL:
            if self.class1 or self.class2 or self.member:
                raise ValueError("Null op carries no parameters")
        elif self.kind is RefactoringKind.INLINE_CLASS:
            if not self.class1 or not self.class2 or self.member is not None:
                raise ValueError("InlineClass takes exactly two class ids")
        else:
            if not self.class1 or not self.class2 or not self.member:
                raise ValueError(f"{self.kind.value} takes two classes and a member")

    @property
    def is_null(self) -> bool:
        return self.kind is RefactoringKind.NULL

    @property
    def moves_method(self) -> bool:
        return self.kind in METHOD_KINDS

    @property
    def moves_field(self) -> bool:
        return self.kind in FIELD_KINDS

    def to_dict(self) -> dict:
        if self.is_null:
            return {"kind": self.kind.value}
        out = {"kind": self.kind.value, "class1": self.class1, "class2": self.class2}
        if self.member is not None:
            out["member"] = self.member
        return out

    @staticmethod
    def from_dict(data: dict) -> "RefactoringOp":
        kind = RefactoringKind(data["kind"])
        return RefactoringOp(
            kind=kind,
            class1=data.get("class1"),
            class2=data.get("class2"),
            member=data.get("member"),
        )


NULL_OP = RefactoringOp(RefactoringKind.NULL)


@dataclass
class Solution:
    """A candidate refactoring sequence with its cached evaluation."""

    genes: tuple[RefactoringOp, ...]
    effective_count: int = 0
    fitness: "object | None" = None  # FitnessVector, set by the evaluator
    reviewers: frozenset[str] = field(default_factory=frozenset)

    def clone(self) -> "Solution":
        return Solution(genes=self.genes)


def _internal(model: CodeModel, class_id: str | None) -> ClassDecl | None:
    if class_id is None:
        return None
    cls = model.classes.get(class_id)
    if cls is None or cls.external:
        return None
    return cls


def is_applicable(op: RefactoringOp, model: CodeModel) -> bool:
    """Check an operation's preconditions against a model state.

    Null is never applicable: it contributes nothing to a sequence's
    effective operations.
    """
    if op.is_null:
        return False
    src = _internal(model, op.class1)
    dst = _internal(model, op.class2)
    if src is None or dst is None or src.id == dst.id:
        return False

    if op.kind is RefactoringKind.INLINE_CLASS:
        if src.id in model.ancestors(dst.id):
            return False
        for m in src.methods:
            if dst.has_method_signature(m.name, m.params):
                return False
        for f in src.fields:
            if dst.has_field_name(f.name):
                return False
        return True

    if op.kind is RefactoringKind.PULL_UP_METHOD or op.kind is RefactoringKind.PULL_UP_FIELD:
        if model.superclass(src.id) != dst.id:
            return False
    if op.kind is RefactoringKind.PUSH_DOWN_METHOD or op.kind is RefactoringKind.PUSH_DOWN_FIELD:
        if model.superclass(dst.id) != src.id:
            return False

    if op.moves_method:
        method = src.find_method(op.member or "")
        if method is None:
            return False
        if op.kind is RefactoringKind.MOVE_METHOD and (method.constructor or method.abstract):
            return False
        return not dst.has_method_signature(method.name, method.params)

    fld = src.find_field(op.member or "")
    if fld is None:
        return False
    return not dst.has_field_name(fld.name)


def _move_member(model: CodeModel, op: RefactoringOp) -> CodeModel:
    src = model.classes[op.class1]
    dst = model.classes[op.class2]
    if op.moves_method:
        member = src.find_method(op.member)
        new_src = replace(src, methods=tuple(m for m in src.methods if m.id != member.id))
        new_dst = replace(dst, methods=dst.methods + (member,))
    else:
        member = src.find_field(op.member)
        new_src = replace(src, fields=tuple(f for f in src.fields if f.id != member.id))
        new_dst = replace(dst, fields=dst.fields + (member,))
    classes = dict(model.classes)
    classes[new_src.id] = new_src
    classes[new_dst.id] = new_dst
    return CodeModel(classes, model.file_of_class, model.inheritance)


def _inline_class(model: CodeModel, op: RefactoringOp) -> CodeModel:
    src = model.classes[op.class1]
    dst = model.classes[op.class2]
    merged = replace(dst, fields=dst.fields + src.fields, methods=dst.methods + src.methods)
    classes = {cid: cls for cid, cls in model.classes.items() if cid != src.id}
    classes[merged.id] = merged
    file_of_class = {c: f for c, f in model.file_of_class.items() if c != src.id}
    parent = model.inheritance.get(src.id)
    inheritance: dict[str, str | None] = {}
    for cid, sup in model.inheritance.items():
        if cid == src.id:
            continue
        inheritance[cid] = parent if sup == src.id else sup
    return CodeModel(classes, file_of_class, inheritance)


def apply(
    op: RefactoringOp, model: CodeModel, graph: CallGraph
) -> tuple[CodeModel, CallGraph, bool]:
    """Apply one operation, returning (model, graph, applied).

    Inapplicable operations (including Null) return the inputs untouched
    with applied False.
    """
    if not is_applicable(op, model):
        return model, graph, False
    if op.kind is RefactoringKind.INLINE_CLASS:
        return _inline_class(model, op), graph, True
    return _move_member(model, op), graph, True


def apply_sequence(
    solution: Solution, model: CodeModel, graph: CallGraph
) -> tuple[CodeModel, CallGraph, list[RefactoringOp]]:
    """Apply a genome left to right against the evolving model state.

    Returns the final model and graph plus the list of operations that
    actually applied, in application order.
    """
    effective: list[RefactoringOp] = []
    current = model
    for op in solution.genes:
        current, graph, applied = apply(op, current, graph)
        if applied:
            effective.append(op)
    return current, graph, effective
