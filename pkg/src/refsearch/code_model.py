"""Structural model of an object-oriented codebase.

The model is loaded from a "code facts" JSON file produced by a static
analyzer.  It captures classes, their fields and methods at signature
level (no bodies), the inheritance relation, the class-to-file mapping,
and a member-level call graph of invoke/access edges.

Loading is pure: the same facts file always yields an identical model.
Models are treated as immutable; refactorings build new models rather
than mutating loaded ones.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import FactsParseError, FactsValidationError, InputError

VISIBILITIES = ("public", "protected", "private", "package")
EDGE_KINDS = ("invoke", "access")


@dataclass(frozen=True)
class FieldDecl:
    id: str
    name: str
    type_name: str
    visibility: str = "private"
    static: bool = False


@dataclass(frozen=True)
class MethodDecl:
    id: str
    name: str
    params: tuple[str, ...] = ()
    returns: str = "void"
    visibility: str = "public"
    static: bool = False
    abstract: bool = False
    constructor: bool = False

    @property
    def signature(self) -> tuple[str, tuple[str, ...]]:
        return (self.name, self.params)


@dataclass(frozen=True)
class ClassDecl:
    id: str
    name: str
    fields: tuple[FieldDecl, ...] = ()
    methods: tuple[MethodDecl, ...] = ()
    external: bool = False

    def find_method(self, member_id: str) -> MethodDecl | None:
        for m in self.methods:
            if m.id == member_id:
                return m
        return None

    def find_field(self, member_id: str) -> FieldDecl | None:
        for f in self.fields:
            if f.id == member_id:
                return f
        return None

    def has_method_signature(self, name: str, params: tuple[str, ...]) -> bool:
        return any(m.name == name and m.params == params for m in self.methods)

    def has_field_name(self, name: str) -> bool:
        return any(f.name == name for f in self.fields)

    def member_ids(self) -> set[str]:
        ids = {f.id for f in self.fields}
        ids.update(m.id for m in self.methods)
        return ids


@dataclass(frozen=True)
class CallEdge:
    source: str
    target: str
    kind: str  # "invoke" or "access"


@dataclass(frozen=True)
class CallGraph:
    edges: tuple[CallEdge, ...] = ()


@dataclass(frozen=True)
class CodeModel:
    """Classes keyed by id, plus the file and inheritance maps.

    `inheritance` maps every class id to its direct superclass id or
    None.  External (library) classes are opaque: no members, no file,
    no superclass; they may only appear as supertypes and are never the
    subject of a refactoring.
    """

    classes: dict[str, ClassDecl] = field(default_factory=dict)
    file_of_class: dict[str, str] = field(default_factory=dict)
    inheritance: dict[str, str | None] = field(default_factory=dict)

    def is_internal(self, class_id: str) -> bool:
        cls = self.classes.get(class_id)
        return cls is not None and not cls.external

    def internal_ids(self) -> list[str]:
        return [cid for cid, cls in self.classes.items() if not cls.external]

    def superclass(self, class_id: str) -> str | None:
        return self.inheritance.get(class_id)

    def children(self, class_id: str) -> list[str]:
        return [cid for cid, sup in self.inheritance.items() if sup == class_id]

    def ancestors(self, class_id: str) -> list[str]:
        """All transitive superclasses, nearest first."""
        chain = []
        current = self.inheritance.get(class_id)
        while current is not None:
            chain.append(current)
            current = self.inheritance.get(current)
        return chain

    def member_class_map(self) -> dict[str, str]:
        owner: dict[str, str] = {}
        for cid, cls in self.classes.items():
            for mid in cls.member_ids():
                owner[mid] = cid
        return owner

    def to_dict(self) -> dict:
        classes = []
        for cid in sorted(self.classes):
            cls = self.classes[cid]
            entry: dict = {"id": cls.id, "name": cls.name}
            if cls.external:
                entry["external"] = True
            else:
                entry["file"] = self.file_of_class[cid]
                sup = self.inheritance.get(cid)
                if sup is not None:
                    entry["superclass"] = sup
                entry["fields"] = [
                    {
                        "id": f.id,
                        "name": f.name,
                        "type": f.type_name,
                        "visibility": f.visibility,
                        "static": f.static,
                    }
                    for f in cls.fields
                ]
                entry["methods"] = [
                    {
                        "id": m.id,
                        "name": m.name,
                        "params": list(m.params),
                        "returns": m.returns,
                        "visibility": m.visibility,
                        "static": m.static,
                        "abstract": m.abstract,
                        "constructor": m.constructor,
                    }
                    for m in cls.methods
                ]
            classes.append(entry)
        return {"classes": classes}


def class_file(model: CodeModel, class_id: str) -> str:
    """File path a class lives in; raises for unknown and external ids."""
    if class_id not in model.classes:
        raise InputError(f"unknown class id: {class_id}")
    if class_id not in model.file_of_class:
        raise InputError(f"no file recorded for external class: {class_id}")
    return model.file_of_class[class_id]


def _parse_field(raw: dict, class_id: str) -> FieldDecl:
    try:
        return FieldDecl(
            id=str(raw["id"]),
            name=str(raw["name"]),
            type_name=str(raw.get("type", "")),
            visibility=str(raw.get("visibility", "private")),
            static=bool(raw.get("static", False)),
        )
    except KeyError as exc:
        raise FactsParseError(f"field of class {class_id} missing key {exc}") from exc


def _parse_method(raw: dict, class_id: str) -> MethodDecl:
    try:
        return MethodDecl(
            id=str(raw["id"]),
            name=str(raw["name"]),
            params=tuple(str(p) for p in raw.get("params", [])),
            returns=str(raw.get("returns", "void")),
            visibility=str(raw.get("visibility", "public")),
            static=bool(raw.get("static", False)),
            abstract=bool(raw.get("abstract", False)),
            constructor=bool(raw.get("constructor", False)),
        )
    except KeyError as exc:
        raise FactsParseError(f"method of class {class_id} missing key {exc}") from exc


def _validate(model: CodeModel, graph: CallGraph) -> None:
    owner: dict[str, str] = {}
    for cid, cls in model.classes.items():
        if cls.external:
            if cls.fields or cls.methods:
                raise FactsValidationError(f"external class has members: {cid}")
            if model.inheritance.get(cid) is not None:
                raise FactsValidationError(f"external class has a superclass: {cid}")
            continue
        seen_sigs: set[tuple[str, tuple[str, ...]]] = set()
        for m in cls.methods:
            if m.visibility not in VISIBILITIES:
                raise FactsValidationError(f"bad visibility on member: {m.id}")
            if m.signature in seen_sigs:
                raise FactsValidationError(
                    f"duplicate method signature in class {cid}: {m.name}"
                )
            seen_sigs.add(m.signature)
        seen_names: set[str] = set()
        for f in cls.fields:
            if f.visibility not in VISIBILITIES:
                raise FactsValidationError(f"bad visibility on member: {f.id}")
            if f.name in seen_names:
                raise FactsValidationError(
                    f"duplicate field name in class {cid}: {f.name}"
                )
            seen_names.add(f.name)
        for mid in cls.member_ids():
            if mid in owner:
                raise FactsValidationError(
                    f"member id declared in two classes: {mid}"
                )
            owner[mid] = cid
        if len(cls.member_ids()) != len(cls.fields) + len(cls.methods):
            raise FactsValidationError(f"duplicate member id inside class: {cid}")

    for cid, sup in model.inheritance.items():
        if sup is not None and sup not in model.classes:
            raise FactsValidationError(f"dangling superclass id: {sup}")

    # Inheritance must be acyclic.
    for cid in model.classes:
        seen = {cid}
        current = model.inheritance.get(cid)
        while current is not None:
            if current in seen:
                raise FactsValidationError(f"inheritance cycle through: {current}")
            seen.add(current)
            current = model.inheritance.get(current)

    methods = {m.id for cls in model.classes.values() for m in cls.methods}
    fields = {f.id for cls in model.classes.values() for f in cls.fields}
    for edge in graph.edges:
        if edge.kind not in EDGE_KINDS:
            raise FactsValidationError(f"bad edge kind: {edge.kind}")
        if edge.source not in owner:
            raise FactsValidationError(f"edge from unknown member: {edge.source}")
        if edge.kind == "invoke" and edge.target not in methods:
            raise FactsValidationError(
                f"invoke edge must target a method: {edge.target}"
            )
        if edge.kind == "access" and edge.target not in fields:
            raise FactsValidationError(
                f"access edge must target a field: {edge.target}"
            )


def model_from_dict(data: dict) -> tuple[CodeModel, CallGraph]:
    """Build and validate a model from a parsed facts document."""
    if not isinstance(data, dict) or "classes" not in data:
        raise FactsParseError("facts document must be an object with a 'classes' list")
    classes: dict[str, ClassDecl] = {}
    file_of_class: dict[str, str] = {}
    inheritance: dict[str, str | None] = {}
    for raw in data["classes"]:
        if not isinstance(raw, dict) or "id" not in raw or "name" not in raw:
            raise FactsParseError("class entry missing 'id' or 'name'")
        cid = str(raw["id"])
        if cid in classes:
            raise FactsValidationError(f"duplicate class id: {cid}")
        external = bool(raw.get("external", False))
        cls = ClassDecl(
            id=cid,
            name=str(raw["name"]),
            fields=tuple(_parse_field(f, cid) for f in raw.get("fields", [])),
            methods=tuple(_parse_method(m, cid) for m in raw.get("methods", [])),
            external=external,
        )
        classes[cid] = cls
        sup = raw.get("superclass")
        inheritance[cid] = str(sup) if sup is not None else None
        if external:
            continue
        if "file" not in raw:
            raise FactsParseError(f"class entry missing 'file': {cid}")
        file_of_class[cid] = str(raw["file"])

    raw_edges = data.get("edges", [])
    edges = []
    seen_edges = set()
    for raw in raw_edges:
        try:
            edge = CallEdge(
                source=str(raw["from"]), target=str(raw["to"]), kind=str(raw["kind"])
            )
        except (KeyError, TypeError) as exc:
            raise FactsParseError(f"edge entry missing key: {raw!r}") from exc
        key = (edge.source, edge.target, edge.kind)
        if key in seen_edges:
            continue
        seen_edges.add(key)
        edges.append(edge)

    model = CodeModel(classes, file_of_class, inheritance)
    graph = CallGraph(tuple(edges))
    _validate(model, graph)
    return model, graph


def load_code_facts(path: str) -> tuple[CodeModel, CallGraph]:
    """Load a code facts JSON file into a validated model and call graph."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise InputError(f"facts file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise FactsParseError(f"facts file is not valid JSON: {path}: {exc}") from exc
    return model_from_dict(data)


def serialize_model(model: CodeModel) -> str:
    """Canonical JSON form, usable for bit-equality checks."""
    return json.dumps(model.to_dict(), sort_keys=True, separators=(",", ":"))
