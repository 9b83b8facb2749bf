from __future__ import annotations

import math

import pytest

from refsearch.errors import ConfigError
from refsearch.refactoring import RefactoringKind, RefactoringOp
from refsearch.semantics import (
    SemanticParams,
    class_vocabulary,
    coherence_score,
    dependency_similarity,
    sequence_coherence,
    split_identifier,
    vocabulary_similarity,
)

from conftest import make_class, make_field, make_graph, make_method, make_model


def test_split_identifier_handles_casing_and_underscores():
    assert split_identifier("getOrderTotal") == ["get", "order", "total"]
    assert split_identifier("order_total") == ["order", "total"]
    assert split_identifier("HTTPServer") == ["http", "server"]
    assert split_identifier("OrderHTTP") == ["order", "http"]
    # single characters carry no vocabulary
    assert split_identifier("a_b_c") == []
    assert split_identifier("x") == []


def vocab_fixture():
    helper = make_class(
        "A", name="OrderHelper",
        fields=[make_field("A.orderTotal", "orderTotal")],
        methods=[
            make_method("A.getTotal", "getTotal", returns="int"),
            make_method("A.loadOrder", "loadOrder"),
        ],
    )
    store = make_class(
        "B", name="OrderStore",
        fields=[make_field("B.orderMap", "orderMap", "Map")],
        methods=[make_method("B.saveOrder", "saveOrder")],
    )
    common = make_class(
        "C", name="Common",
        fields=[make_field("C.shared", "shared")],
        methods=[make_method("C.touch", "touch")],
    )
    model = make_model([helper, store, common])
    graph = make_graph(
        ("A.loadOrder", "C.shared", "access"),
        ("B.saveOrder", "C.shared", "access"),
        ("A.getTotal", "A.orderTotal", "access"),
    )
    return model, graph


def test_class_vocabulary_counts_tokens():
    model, _ = vocab_fixture()
    vocab = class_vocabulary(model.classes["A"])
    assert vocab == {"order": 3, "helper": 1, "total": 2, "get": 1, "load": 1}


def test_vocabulary_similarity_hand_computed():
    model, _ = vocab_fixture()
    vs = vocabulary_similarity(model.classes["A"], model.classes["B"])
    # only "order" is shared: 3x3 over norms sqrt(16) and sqrt(12)
    assert abs(vs - 9 / (4 * math.sqrt(12))) < 1e-12
    assert vocabulary_similarity(model.classes["A"], model.classes["A"]) == 1.0


def test_vocabulary_similarity_of_disjoint_names_is_zero():
    a = make_class("A", name="Alpha", methods=[make_method("A.walk", "walk")])
    b = make_class("B", name="Beta", methods=[make_method("B.jump", "jump")])
    assert vocabulary_similarity(a, b) == 0.0


def test_dependency_similarity_hand_computed():
    model, graph = vocab_fixture()
    # out(A) = {C.shared, A.orderTotal}, out(B) = {C.shared}: Jaccard 1/2.
    # in(A) = {A.getTotal}, in(B) = empty: Jaccard 0.
    ds = dependency_similarity(model.classes["A"], model.classes["B"], graph)
    assert ds == 0.25


def test_dependency_similarity_without_edges_is_zero():
    model, _ = vocab_fixture()
    ds = dependency_similarity(model.classes["A"], model.classes["B"], make_graph())
    assert ds == 0.0


def test_coherence_blend_endpoints():
    model, graph = vocab_fixture()
    a, b = model.classes["A"], model.classes["B"]
    ds = dependency_similarity(a, b, graph)
    vs = vocabulary_similarity(a, b)
    assert coherence_score(a, b, graph, SemanticParams(alpha=1.0)) == ds
    assert coherence_score(a, b, graph, SemanticParams(alpha=0.0)) == vs
    blended = coherence_score(a, b, graph, SemanticParams(alpha=0.8))
    assert abs(blended - (0.8 * ds + 0.2 * vs)) < 1e-12


def test_sequence_coherence_averages_the_applied_pairs():
    model, graph = vocab_fixture()
    params = SemanticParams()
    op_ab = RefactoringOp(RefactoringKind.MOVE_METHOD, "A", "B", "A.getTotal")
    op_ac = RefactoringOp(RefactoringKind.MOVE_METHOD, "A", "C", "A.loadOrder")
    lone = sequence_coherence([op_ab], model, graph, params)
    assert lone == coherence_score(model.classes["A"], model.classes["B"], graph, params)
    pair = sequence_coherence([op_ab, op_ac], model, graph, params)
    expected = (
        coherence_score(model.classes["A"], model.classes["B"], graph, params)
        + coherence_score(model.classes["A"], model.classes["C"], graph, params)
    ) / 2
    assert abs(pair - expected) < 1e-12
    assert sequence_coherence([], model, graph, params) == 0.0


def test_alpha_is_validated():
    SemanticParams(alpha=0.0).validate()
    SemanticParams(alpha=1.0).validate()
    with pytest.raises(ConfigError):
        SemanticParams(alpha=-0.1).validate()
    with pytest.raises(ConfigError):
        SemanticParams(alpha=1.1).validate()
