from __future__ import annotations

import json
from pathlib import Path

import pytest

from refsearch.code_model import (
    CallEdge,
    CallGraph,
    ClassDecl,
    CodeModel,
    FieldDecl,
    MethodDecl,
)

REPO_ROOT = Path(__file__).resolve().parent.parent
DEMO_DIR = REPO_ROOT / "fixtures" / "demo"


@pytest.fixture
def demo_paths():
    return {
        "facts": DEMO_DIR / "facts.json",
        "commits": DEMO_DIR / "commits.jsonl",
        "activity": DEMO_DIR / "activity.json",
        "aliases": DEMO_DIR / "aliases.json",
    }


def make_field(fid, name, type_name="int", visibility="private", static=False):
    return FieldDecl(id=fid, name=name, type_name=type_name, visibility=visibility, static=static)


def make_method(
    mid,
    name,
    params=(),
    returns="void",
    visibility="public",
    static=False,
    abstract=False,
    constructor=False,
):
    return MethodDecl(
        id=mid,
        name=name,
        params=tuple(params),
        returns=returns,
        visibility=visibility,
        static=static,
        abstract=abstract,
        constructor=constructor,
    )


def make_class(cid, name=None, fields=(), methods=(), external=False):
    return ClassDecl(
        id=cid,
        name=name if name is not None else cid,
        fields=tuple(fields),
        methods=tuple(methods),
        external=external,
    )


def make_model(classes, files=None, inheritance=None):
    """Build a CodeModel from ClassDecls, file paths and child->parent links."""
    file_of_class = {}
    for cls in classes:
        if cls.external:
            continue
        if files and cls.id in files:
            file_of_class[cls.id] = files[cls.id]
        else:
            file_of_class[cls.id] = f"src/{cls.id}.java"
    return CodeModel(
        classes={cls.id: cls for cls in classes},
        file_of_class=file_of_class,
        inheritance=dict(inheritance or {}),
    )


def make_graph(*edges):
    return CallGraph(edges=tuple(CallEdge(source=s, target=t, kind=k) for s, t, k in edges))


def write_json(path, payload):
    path.write_text(json.dumps(payload, indent=2) + "\n")
    return path


def write_jsonl(path, rows):
    path.write_text("".join(json.dumps(row) + "\n" for row in rows))
    return path


class ScriptedRng:
    """Stand-in for random.Random that replays queued draws.

    Each queue is consumed in order; running out of scripted values is a
    test bug, so it fails loudly.
    """

    def __init__(self, randoms=(), choices=(), randints=(), randranges=()):
        self._randoms = list(randoms)
        self._choices = list(choices)
        self._randints = list(randints)
        self._randranges = list(randranges)

    def random(self):
        assert self._randoms, "scripted random() exhausted"
        return self._randoms.pop(0)

    def choice(self, seq):
        assert self._choices, "scripted choice() exhausted"
        value = self._choices.pop(0)
        assert value in list(seq), f"scripted choice {value!r} not in {list(seq)!r}"
        return value

    def randint(self, a, b):
        assert self._randints, "scripted randint() exhausted"
        value = self._randints.pop(0)
        assert a <= value <= b
        return value

    def randrange(self, n):
        assert self._randranges, "scripted randrange() exhausted"
        value = self._randranges.pop(0)
        assert 0 <= value < n
        return value
