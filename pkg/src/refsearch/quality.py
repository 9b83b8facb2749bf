"""Design quality metrics and weighted quality attributes.

Eleven structural metrics are computed from a model and its call graph,
then combined into six quality attributes with the published weighted
linear forms.  Per-class metrics are arithmetic means over internal
classes; design size (DSC) and hierarchy count (NOH) are model-global.
External classes are opaque and excluded from the averages.

The quality objective of a refactoring sequence is the sum over the six
attributes of (after - before), computed on raw attribute values.
"""

from __future__ import annotations

from dataclasses import dataclass

from .code_model import CallGraph, ClassDecl, CodeModel
from .refactoring import Solution, apply_sequence

METRIC_NAMES = (
    "dsc",  # design size in classes
    "noh",  # number of hierarchies
    "ana",  # average number of ancestors
    "dam",  # data access metric (encapsulation)
    "dcc",  # direct class coupling
    "cam",  # cohesion among methods of a class
    "moa",  # measure of aggregation
    "mfa",  # measure of functional abstraction
    "nop",  # number of polymorphic (abstract) methods
    "cis",  # class interface size (public methods)
    "nom",  # number of methods
)

ATTRIBUTE_NAMES = (
    "reusability",
    "flexibility",
    "understandability",
    "functionality",
    "extendibility",
    "effectiveness",
)

# Published attribute weights over the design properties, keyed here by
# the metric that measures each property.
ATTRIBUTE_WEIGHTS: dict[str, dict[str, float]] = {
    "reusability": {"dcc": -0.25, "cam": 0.25, "cis": 0.5, "dsc": 0.5},
    "flexibility": {"dam": 0.25, "dcc": -0.25, "moa": 0.5, "nop": 0.5},
    "understandability": {
        "ana": -0.33,
        "dam": 0.33,
        "dcc": -0.33,
        "cam": 0.33,
        "nop": -0.33,
        "nom": -0.33,
        "dsc": -0.33,
    },
    "functionality": {"cam": 0.12, "nop": 0.22, "cis": 0.22, "dsc": 0.22, "noh": 0.22},
    "extendibility": {"ana": 0.5, "dcc": -0.5, "mfa": 0.5, "nop": 0.5},
    "effectiveness": {"ana": 0.2, "dam": 0.2, "moa": 0.2, "mfa": 0.2, "nop": 0.2},
}


@dataclass(frozen=True)
class DesignMetrics:
    dsc: float
    noh: float
    ana: float
    dam: float
    dcc: float
    cam: float
    moa: float
    mfa: float
    nop: float
    cis: float
    nom: float

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in METRIC_NAMES}


@dataclass(frozen=True)
class QualityVector:
    reusability: float
    flexibility: float
    understandability: float
    functionality: float
    extendibility: float
    effectiveness: float

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in ATTRIBUTE_NAMES}

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(getattr(self, name) for name in ATTRIBUTE_NAMES)

    def total(self) -> float:
        return sum(self.as_tuple())


ZERO_METRICS = DesignMetrics(*([0.0] * len(METRIC_NAMES)))


def _type_target(type_name: str, internal_ids: set[str], name_to_id: dict[str, str]) -> str | None:
    if type_name in internal_ids:
        return type_name
    return name_to_id.get(type_name)


def _class_dam(cls: ClassDecl) -> float:
    if not cls.fields:
        return 0.0
    hidden = sum(1 for f in cls.fields if f.visibility in ("private", "protected"))
    return hidden / len(cls.fields)


def _class_cam(cls: ClassDecl) -> float:
    if not cls.methods:
        return 0.0
    all_types: set[str] = set()
    per_method = []
    for m in cls.methods:
        types = {p for p in m.params if p}
        per_method.append(types)
        all_types.update(types)
    if not all_types:
        return 0.0
    return sum(len(t) for t in per_method) / (len(cls.methods) * len(all_types))


def _class_mfa(cls: ClassDecl, model: CodeModel) -> float:
    inherited: set[tuple[str, tuple[str, ...]]] = set()
    for anc_id in model.ancestors(cls.id):
        anc = model.classes.get(anc_id)
        if anc is None:
            continue
        for m in anc.methods:
            if m.constructor or m.visibility == "private":
                continue
            inherited.add(m.signature)
    declared = {m.signature for m in cls.methods if not m.constructor}
    inherited -= declared
    total = len(inherited) + len(declared)
    if total == 0:
        return 0.0
    return len(inherited) / total


def compute_metrics(model: CodeModel, graph: CallGraph) -> DesignMetrics:
    """Compute the eleven design metrics for a model state."""
    internals = [model.classes[cid] for cid in model.internal_ids()]
    n = len(internals)
    if n == 0:
        return ZERO_METRICS

    internal_ids = {c.id for c in internals}
    name_to_id: dict[str, str] = {}
    for c in internals:
        if c.name not in name_to_id or c.id < name_to_id[c.name]:
            name_to_id[c.name] = c.id

    owner = model.member_class_map()
    out_classes: dict[str, set[str]] = {c.id: set() for c in internals}
    for edge in graph.edges:
        src = owner.get(edge.source)
        dst = owner.get(edge.target)
        if src is None or dst is None or src == dst:
            continue
        if src in out_classes and dst in internal_ids:
            out_classes[src].add(dst)

    dam = cam = moa = mfa = nop = cis = nom = ana = dcc = 0.0
    for cls in internals:
        dam += _class_dam(cls)
        cam += _class_cam(cls)
        mfa += _class_mfa(cls, model)
        nop += sum(1 for m in cls.methods if m.abstract)
        cis += sum(1 for m in cls.methods if m.visibility == "public")
        nom += len(cls.methods)
        ana += len(model.ancestors(cls.id))

        refs = set(out_classes[cls.id])
        for f in cls.fields:
            target = _type_target(f.type_name, internal_ids, name_to_id)
            if target is not None and target != cls.id:
                refs.add(target)
        for m in cls.methods:
            for p in m.params:
                target = _type_target(p, internal_ids, name_to_id)
                if target is not None and target != cls.id:
                    refs.add(target)
        dcc += len(refs)

        moa += sum(
            1
            for f in cls.fields
            if _type_target(f.type_name, internal_ids, name_to_id) is not None
        )

    # A hierarchy is rooted at an internal class with no internal parent
    # and at least one internal child.
    roots = 0
    for cls in internals:
        sup = model.superclass(cls.id)
        if sup is not None and model.is_internal(sup):
            continue
        if any(model.is_internal(ch) for ch in model.children(cls.id)):
            roots += 1

    return DesignMetrics(
        dsc=float(n),
        noh=float(roots),
        ana=ana / n,
        dam=dam / n,
        dcc=dcc / n,
        cam=cam / n,
        moa=moa / n,
        mfa=mfa / n,
        nop=nop / n,
        cis=cis / n,
        nom=nom / n,
    )


def compute_attributes(metrics: DesignMetrics) -> QualityVector:
    """Combine metrics into the six quality attributes (linear forms)."""
    values = metrics.as_dict()
    out = {}
    for attr in ATTRIBUTE_NAMES:
        out[attr] = sum(w * values[m] for m, w in ATTRIBUTE_WEIGHTS[attr].items())
    return QualityVector(**out)


def attribute_shift(before: QualityVector, after: QualityVector) -> float:
    return sum(a - b for a, b in zip(after.as_tuple(), before.as_tuple()))


def quality_gain(model: CodeModel, graph: CallGraph, solution: Solution) -> float:
    """Total attribute change produced by applying a solution's sequence."""
    before = compute_attributes(compute_metrics(model, graph))
    after_model, after_graph, _ = apply_sequence(solution, model, graph)
    after = compute_attributes(compute_metrics(after_model, after_graph))
    return attribute_shift(before, after)
