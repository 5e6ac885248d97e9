# tests/test_uniform_forest.py

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graph_core.errors import PreconditionError
from graph_core.graph import Graph, cycle_graph, lowest_bits
from graph_core.rooted_tree import RootedTreeEmbedding, is_uniform
from graph_core.validators import validate_path_induced
from harness.generators import gen_biclique_free, gen_gnp, gen_projective
from uniform_forest.badness_service import bad_vertex_set, is_t_bad, uniform_shape
from uniform_forest.edge_partition import EDGE_CLASSES, edge_partition_audit
from uniform_forest.path_induced_search import find_path_induced_uniform
from uniform_forest.shrink_service import disjointify, prune_uniform, shrink
from witness_search.brute_force import brute_path_induced_uniform
from witness_search.budget import SearchBudget
from tests.strategies import graphs


@pytest.fixture
def star_host() -> Graph:
    """Star 0 -> 1..4; vertex 5 sees leaf 1, vertex 6 sees leaves 1..3."""
    edges = [(0, i) for i in range(1, 5)] + [(5, 1), (6, 1), (6, 2), (6, 3)]
    return Graph.from_edges(7, edges)


@pytest.fixture
def star_tree() -> RootedTreeEmbedding:
    return RootedTreeEmbedding.from_children(0, {0: [1, 2, 3, 4]})


# ================= BADNESS =================

def test_badness_threshold(star_host, star_tree):
    clean = is_t_bad(star_host, star_tree, 2, 5)
    assert not clean.is_bad
    assert clean.threshold == Fraction(2)

    bad = is_t_bad(star_host, star_tree, 2, 6)
    assert bad.is_bad
    assert (bad.witness_parent, bad.adjacent_children) == (0, 3)

    with pytest.raises(PreconditionError):
        is_t_bad(star_host, star_tree, 2, 1)


def test_uniform_shape(star_tree):
    assert uniform_shape(star_tree) == (4, 1)
    assert uniform_shape(RootedTreeEmbedding.single(3)) == (1, 0)
    with pytest.raises(PreconditionError):
        uniform_shape(RootedTreeEmbedding.from_children(0, {0: [1, 2], 1: [3]}))


def test_bad_vertex_set(star_host, star_tree):
    audit = bad_vertex_set(star_host, star_tree, 2)
    assert audit.bad == frozenset({6})
    assert audit.bound == 4
    assert audit.within_bound
    assert audit.biclique is None
    with pytest.raises(PreconditionError):
        bad_vertex_set(star_host, star_tree, 3)


def _bad_audit_hosts():
    for q in (2, 3):
        yield gen_projective(q)
    for seed in range(20):
        yield gen_biclique_free(24, 0.3, 2, seed)


@pytest.mark.slow
@pytest.mark.parametrize("zeta, eta", [(2, 1), (2, 2), (4, 1)])
def test_bad_vertices_stay_below_bound_without_four_cycles(zeta, eta):
    audited = 0
    for g in _bad_audit_hosts():
        tree = find_path_induced_uniform(g, zeta, eta)
        if tree is None:
            continue
        audit = bad_vertex_set(g, tree, 2, check_biclique=True)
        assert audit.biclique is None
        assert audit.bound == zeta ** eta
        assert audit.within_bound
        audited += 1
    assert audited > 0


# ================= SHRINK / DISJOINTIFY =================

def test_prune_uniform_respects_blocked(star_tree):
    pruned = prune_uniform(star_tree, 2, blocked=1 << 1 | 1 << 3)
    assert pruned.children_of(0) == (2, 4)
    assert prune_uniform(star_tree, 4, blocked=1 << 2) is None
    with pytest.raises(PreconditionError):
        prune_uniform(star_tree, 0)


def test_shrink_avoids_the_outside_vertex(star_host, star_tree):
    result = shrink(star_host, star_tree, 2, 2, 5)
    assert result.children_of(0) == (2, 3)
    with pytest.raises(PreconditionError):
        shrink(star_host, star_tree, 2, 2, 6)
    with pytest.raises(PreconditionError):
        shrink(star_host, star_tree, 3, 2, 5)


@pytest.mark.parametrize("q", [2, 3])
def test_shrink_succeeds_for_every_clean_vertex(q):
    g = gen_projective(q)
    tt, zeta = 2, (q + 1) // 2
    checked = 0
    for root in g.vertices():
        kids = lowest_bits(g.neighbours(root), tt * zeta)
        tree = RootedTreeEmbedding.from_children(root, {root: kids})
        for u in g.vertices():
            if u in tree or is_t_bad(g, tree, tt, u).is_bad:
                continue
            result = shrink(g, tree, tt, zeta, u)
            assert is_uniform(result, zeta, 1)
            assert result.is_rooted_subtree_of(tree)
            assert not g.neighbours(u) & result.member_mask & ~(1 << root)
            checked += 1
    assert checked > 0


def test_disjointify_on_shared_leaves():
    edges = [(r, leaf) for r in (0, 1) for leaf in range(2, 10)]
    g = Graph.from_edges(10, edges)
    trees = [RootedTreeEmbedding.from_children(r, {r: list(range(2, 10))}) for r in (0, 1)]
    first, second = disjointify(g, trees, 2, 1)
    assert first.children_of(0) == (2, 3)
    assert second.children_of(1) == (4, 5)
    with pytest.raises(PreconditionError):
        disjointify(g, trees, 1, 1)
    with pytest.raises(PreconditionError):
        disjointify(g, trees[:1] + [RootedTreeEmbedding.from_children(2, {2: [0, 1]})], 2, 1)


@pytest.mark.parametrize("seed", range(50))
def test_disjointify_on_random_hosts(seed):
    g = gen_gnp(30, 0.6, seed)
    roots = [v for v in g.vertices() if g.degree(v) >= 10][:2]
    if len(roots) < 2:
        pytest.skip("host too sparse")
    others = (1 << roots[0]) | (1 << roots[1])
    trees = [
        RootedTreeEmbedding.from_children(r, {r: lowest_bits(g.neighbours(r) & ~others, 8)}) for r in roots
    ]
    result = disjointify(g, trees, 2, 1)
    assert [t.root for t in result] == roots
    assert not result[0].member_mask & result[1].member_mask
    for pruned, original in zip(result, trees):
        assert is_uniform(pruned, 2, 1)
        assert pruned.is_rooted_subtree_of(original)


# ================= PATH-INDUCED SEARCH =================

def test_path_induced_trees_in_small_graphs(c5, petersen):
    path = find_path_induced_uniform(c5, 1, 2, root=0)
    assert path.parent == {1: 0, 2: 1}
    assert find_path_induced_uniform(c5, 2, 1, root=0).children_of(0) == (1, 4)
    assert find_path_induced_uniform(c5, 2, 2) is None
    tree = find_path_induced_uniform(petersen, 2, 2)
    assert is_uniform(tree, 2, 2) and validate_path_induced(petersen, tree)
    assert find_path_induced_uniform(cycle_graph(6), 1, 5) is None
    with pytest.raises(PreconditionError):
        find_path_induced_uniform(c5, 0, 1)


def test_path_induced_search_honours_avoid(c5):
    tree = find_path_induced_uniform(c5, 1, 1, root=0, avoid=1 << 1)
    assert tree.parent == {4: 0}


@pytest.mark.property_based
@given(graphs(min_vertices=1, max_vertices=8), st.sampled_from([(1, 2), (2, 1), (2, 2), (1, 3), (3, 1)]))
@settings(max_examples=200, deadline=None)
def test_path_induced_search_agrees_with_brute_force(g, shape):
    zeta, eta = shape
    found = find_path_induced_uniform(g, zeta, eta)
    assert (found is not None) == brute_path_induced_uniform(g, zeta, eta)
    if found is not None:
        assert is_uniform(found, zeta, eta)
        assert validate_path_induced(g, found)


# ================= EDGE PARTITION =================

def test_edge_partition_classes():
    edges = [(0, i) for i in range(1, 11)] + [(1, 10)]
    g = Graph.from_edges(11, edges)
    report = edge_partition_audit(g, 2, 2, 1)
    assert report.zeta_prime == 8
    assert report.limb_roots == frozenset({0})
    assert report.limbs[0].children_of(0) == tuple(range(1, 9))
    for leaf in range(1, 9):
        assert report.classes[(0, leaf)] == "D"
    assert report.classes[(0, 9)] == "B"
    assert report.classes[(0, 10)] == "C"
    assert report.classes[(1, 10)] == "A"
    assert report.sizes == {"A": 1, "B": 1, "C": 1, "D": 8}
    assert (report.max_d_per_head, report.max_b_per_tail) == (8, 1)
    assert not report.partial


def test_edge_partition_under_exhausted_budget():
    edges = [(0, i) for i in range(1, 11)] + [(1, 10)]
    g = Graph.from_edges(11, edges)
    report = edge_partition_audit(g, 2, 2, 1, budget_nodes=0)
    assert report.partial
    assert report.unresolved == frozenset(range(11))
    assert report.sizes["A"] == g.edge_count


def test_edge_partition_preconditions(c5):
    with pytest.raises(PreconditionError):
        edge_partition_audit(c5, 1, 1, 1)


@pytest.mark.property_based
@given(graphs(max_vertices=9), st.sampled_from([(2, 1, 1), (2, 1, 2), (2, 2, 1)]))
@settings(max_examples=100, deadline=None)
def test_edge_classes_partition_the_edges(g, params):
    zeta, eta, tt = params
    report = edge_partition_audit(g, zeta, eta, tt, workers=2)
    assert set(report.classes) == set(g.edges())
    assert sum(report.sizes.values()) == g.edge_count
    assert set(report.classes.values()) <= set(EDGE_CLASSES)
    for edge, head in report.heads.items():
        assert head in edge and head in report.limb_roots
