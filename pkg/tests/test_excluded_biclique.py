# tests/test_excluded_biclique.py

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graph_core.abstract_tree import AbstractTree
from graph_core.degeneracy_service import certificate_violation, is_proper_coloring
from graph_core.errors import PreconditionError
from graph_core.graph import Graph, complete_bipartite
from graph_core.validators import validate_biclique, validate_embedding, validate_subgraph_embedding
from excluded_biclique.bag_service import is_v_bag, pack_bags
from excluded_biclique.kst_service import KST_STATUSES, build_back_bounded_tree, kst_constant, kst_pipeline
from excluded_biclique.local_digraph import LocalDigraph, orient_color
from excluded_biclique.weak_kst_service import weak_kst_color, weak_kst_constant
from witness_search.budget import SearchBudget
from tests.strategies import graphs


@st.composite
def bounded_digraphs(draw, max_vertices: int = 12, max_out: int = 3):
    n = draw(st.integers(1, max_vertices))
    k = draw(st.integers(0, max_out))
    out = []
    for v in range(n):
        others = [w for w in range(n) if w != v]
        out.append(draw(st.lists(st.sampled_from(others), max_size=k, unique=True)) if others else [])
    return LocalDigraph(n, out), k


# ================= LOCAL DIGRAPHS =================

def test_local_digraph_checks_its_arcs():
    with pytest.raises(PreconditionError):
        LocalDigraph(2, [[0], []])
    with pytest.raises(PreconditionError):
        LocalDigraph(2, [[2], []])
    with pytest.raises(PreconditionError):
        LocalDigraph(2, [[1]])
    j = LocalDigraph(3, [[1, 2], [2], []])
    assert j.max_out_degree() == 2
    assert sorted(j.underlying().edges()) == [(0, 1), (0, 2), (1, 2)]


def test_orient_color_rejects_large_out_degree():
    j = LocalDigraph(3, [[1, 2], [], []])
    with pytest.raises(PreconditionError):
        orient_color(j, 1)


@pytest.mark.property_based
@given(bounded_digraphs())
@settings(max_examples=200, deadline=None)
def test_orient_color_is_proper_with_few_colours(sample):
    j, k = sample
    coloring = orient_color(j, k)
    assert is_proper_coloring(j.underlying(), coloring)
    assert len(set(coloring.values())) <= 2 * k + 1


# ================= BAGS =================

def test_v_bags_in_a_cycle(c5):
    edge = AbstractTree.path(2)
    assert is_v_bag(c5, 0, {1}, edge)
    assert not is_v_bag(c5, 0, {2}, edge)
    assert not is_v_bag(c5, 0, {0}, edge)
    assert is_v_bag(c5, 0, {1, 2}, AbstractTree.path(3))
    assert not is_v_bag(c5, 1, {0, 2}, AbstractTree.path(3))


def test_pack_bags_stops_at_overflow(c5):
    edge = AbstractTree.path(2)
    full = pack_bags(c5, 0, edge, 3)
    assert full.overflow
    assert full.bags == (frozenset({1}), frozenset({4}))
    assert full.union == frozenset({1, 4})
    for bag in full.bags:
        assert is_v_bag(c5, 0, bag, edge)

    maximal = pack_bags(c5, 0, edge, 4)
    assert not maximal.overflow and len(maximal.bags) == 2

    assert pack_bags(c5, 0, edge, 1).bags == ()
    assert pack_bags(c5, 0, edge, 4, within=1 << 4).bags == (frozenset({4}),)
    with pytest.raises(PreconditionError):
        pack_bags(c5, 0, AbstractTree.single(), 3)


# ================= WEAK COLOURING =================

def test_weak_constant():
    assert weak_kst_constant(3, 2) == 12 ** 5


def test_trivial_patterns():
    assert weak_kst_color(Graph.empty(3), AbstractTree.single(), 1, 1).status == "induced"
    outcome = weak_kst_color(Graph.empty(3), AbstractTree.path(2), 1, 1)
    assert outcome.status == "coloring" and outcome.colors_used == 1
    edge = weak_kst_color(complete_bipartite(1, 1), AbstractTree.path(2), 1, 1)
    assert edge.status == "induced"
    assert validate_embedding(complete_bipartite(1, 1), edge.embedding)
    assert weak_kst_color(Graph.empty(0), AbstractTree.path(3), 2, 2).coloring == {}


def test_sparse_host_is_coloured_after_peeling(c5):
    outcome = weak_kst_color(c5, AbstractTree.path(3), 2, 2)
    assert outcome.status == "coloring"
    assert is_proper_coloring(c5, outcome.coloring)
    assert outcome.colors_used <= 3
    assert outcome.bound == weak_kst_constant(3, 2) * 2


def test_lowered_threshold_finds_an_induced_path(k22_with_pendant):
    outcome = weak_kst_color(k22_with_pendant, AbstractTree.path(3), 2, 2, peel_threshold=2)
    assert outcome.status == "induced"
    assert validate_embedding(k22_with_pendant, outcome.embedding)


def test_lowered_threshold_finds_a_biclique():
    g = complete_bipartite(3, 3)
    outcome = weak_kst_color(g, AbstractTree.path(4), 2, 2, peel_threshold=1)
    assert outcome.status == "biclique"
    assert validate_biclique(g, outcome.witness)
    assert (outcome.witness.s, outcome.witness.t) == (2, 2)


def test_weak_colouring_budget_and_preconditions(c5):
    assert weak_kst_color(c5, AbstractTree.path(3), 2, 2, SearchBudget(0), peel_threshold=1).status == "budget"
    with pytest.raises(PreconditionError):
        weak_kst_color(c5, AbstractTree.path(3), 0, 2)
    with pytest.raises(PreconditionError):
        weak_kst_color(c5, AbstractTree.path(3), 2, 2, peel_threshold=0)


@pytest.mark.property_based
@given(
    graphs(max_vertices=8),
    st.sampled_from([AbstractTree.path(3), AbstractTree.path(4), AbstractTree.star(3)]),
    st.integers(2, 3),
    st.integers(1, 2),
    st.integers(1, 2),
)
@settings(max_examples=150, deadline=None)
def test_weak_colouring_outcomes_are_checkable(g, h, s, tt, threshold):
    outcome = weak_kst_color(g, h, s, tt, peel_threshold=threshold)
    assert outcome.status in ("coloring", "induced", "biclique")
    if outcome.status == "coloring":
        assert is_proper_coloring(g, outcome.coloring)
    elif outcome.status == "induced":
        assert validate_embedding(g, outcome.embedding)
        assert outcome.embedding.pattern == h
    else:
        assert validate_biclique(g, outcome.witness)
        assert (outcome.witness.s, outcome.witness.t) == (s, tt)


# ================= BACK-BOUNDED TREES =================

def test_back_bounded_path_in_a_cycle(c5):
    built = build_back_bounded_tree(c5, AbstractTree.path(3), 2, 2)
    assert built.status == "tree"
    assert built.embedding.image == (0, 1, 2)
    assert validate_subgraph_embedding(c5, built.embedding, 1)


def test_back_bounded_tree_falls_back_to_a_biclique_or_low_degree(c5):
    star = build_back_bounded_tree(c5, AbstractTree.path(2), 1, 2)
    assert star.status == "biclique"
    assert star.witness.side_a == frozenset({0})
    assert validate_biclique(c5, star.witness)

    low = build_back_bounded_tree(c5, AbstractTree.path(2), 1, 3)
    assert (low.status, low.vertex, low.degree) == ("low_degree", 0, 2)

    with pytest.raises(PreconditionError):
        build_back_bounded_tree(c5, AbstractTree.path(2), 1, 1, within=0)


# ================= K_{s,t} PIPELINE =================

def test_kst_constant():
    assert kst_constant(3, 2) == 9


def test_sparse_host_gets_a_certificate(c5):
    outcome = kst_pipeline(c5, AbstractTree.path(3), AbstractTree.path(4), 2, 1)
    assert outcome.status == "certificate"
    assert outcome.bound == 9
    assert certificate_violation(c5, outcome.certificate) is None


def test_dense_bipartite_host_outcomes():
    g = complete_bipartite(4, 4)
    claw = kst_pipeline(g, AbstractTree.path(2), AbstractTree.star(3), 2, 1)
    assert claw.status == "induced"
    assert validate_embedding(g, claw.embedding)
    assert validate_subgraph_embedding(g, claw.tree, 1)

    bad = kst_pipeline(g, AbstractTree.path(2), AbstractTree.path(4), 2, 1)
    assert bad.status == "bad_s_tree"
    assert bad.tree is not None and bad.message

    biclique = kst_pipeline(g, AbstractTree.path(2), AbstractTree.path(4), 1, 2)
    assert biclique.status == "biclique"
    assert validate_biclique(g, biclique.witness)

    assert kst_pipeline(g, AbstractTree.path(2), AbstractTree.star(3), 2, 1, SearchBudget(0)).status == "budget"


def test_kst_statuses_and_preconditions(c5):
    assert set(KST_STATUSES) == {"certificate", "biclique", "induced", "bad_s_tree", "budget"}
    with pytest.raises(PreconditionError):
        kst_pipeline(c5, AbstractTree.path(3), AbstractTree.path(4), 0, 1)
