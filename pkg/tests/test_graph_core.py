# tests/test_graph_core.py

from __future__ import annotations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings

from graph_core.abstract_tree import AbstractForest, AbstractTree
from graph_core.certificates import (
    BicliqueWitness,
    DegeneracyCertificate,
    InducedEmbedding,
    SubgraphEmbedding,
    certificate_from_dict,
)
from graph_core.degeneracy_service import (
    certificate_violation,
    color_count,
    degeneracy,
    greedy_color,
    is_proper_coloring,
    peel_below,
)
from graph_core.errors import CertificateError, GraphFormatError, PreconditionError
from graph_core.graph import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    iter_bits,
    lowest_bits,
    mask_of,
    path_graph,
)
from graph_core.rooted_tree import RootedTreeEmbedding, is_uniform, uniform_size
from graph_core.validators import (
    is_induced_cycle,
    is_induced_path,
    validate_biclique,
    validate_embedding,
    validate_path_induced,
    validate_subgraph_embedding,
)
from tests.strategies import graphs


# ================= BITSETS =================

def test_bit_helpers():
    assert list(iter_bits(0b10110)) == [1, 2, 4]
    assert mask_of([4, 1, 2]) == 0b10110
    assert lowest_bits(0b10110, 2) == [1, 2]
    assert lowest_bits(0b10, 5) == [1]


# ================= GRAPH =================

def test_from_edges_rejects_loops_and_parallel_edges():
    with pytest.raises(GraphFormatError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(GraphFormatError):
        Graph.from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(GraphFormatError):
        Graph.from_edges(2, [(0, 2)])


def test_asymmetric_adjacency_is_rejected():
    with pytest.raises(PreconditionError):
        Graph(2, [0b10, 0])


def test_queries_on_a_cycle(c5):
    assert c5.vertex_count == 5
    assert c5.edge_count == 5
    assert list(c5.edges()) == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
    assert c5.neighbour_list(0) == [1, 4]
    assert c5.degree(0, within=mask_of([1, 2])) == 1
    assert c5.common_neighbours([0, 2]) == mask_of([1])


def test_derived_graphs(c5):
    sub, kept = c5.induced_subgraph([0, 1, 2])
    assert kept == [0, 1, 2]
    assert list(sub.edges()) == [(0, 1), (1, 2)]
    assert c5.with_edges_removed([(0, 4)]) == path_graph(5)
    assert path_graph(5).with_edges_added([(0, 4)]) == c5
    union = c5.disjoint_union(path_graph(2))
    assert union.vertex_count == 7 and union.has_edge(5, 6)


def test_exports_agree(petersen):
    matrix = petersen.adjacency_matrix()
    assert matrix.shape == (10, 10)
    assert np.array_equal(matrix, matrix.T)
    assert int(matrix.sum()) == 2 * petersen.edge_count == 30
    assert nx.is_isomorphic(petersen.to_networkx(), nx.petersen_graph())
    assert Graph.from_networkx(nx.petersen_graph()).edge_count == 15


# ================= PATTERN TREES =================

def test_tree_factories():
    assert AbstractTree.path(4).height == 3
    assert AbstractTree.star(3).spread == 3
    assert AbstractTree.spider(2, 2).vertex_count == 5
    uniform = AbstractTree.uniform(2, 2)
    assert (uniform.vertex_count, uniform.height, uniform.spread) == (7, 2, 2)
    assert AbstractTree.parse_spec("uniform:2x2") == uniform
    assert AbstractTree.parse_spec("path:4").is_path()


@pytest.mark.parametrize("spec", ["blob:3", "path:x", "spider:3"])
def test_bad_tree_specs(spec):
    with pytest.raises(PreconditionError):
        AbstractTree.parse_spec(spec)


def test_cyclic_pattern_is_rejected():
    with pytest.raises(PreconditionError):
        AbstractTree(3, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(PreconditionError):
        AbstractTree(3, [(0, 1)])


def test_without_leaf_relabels_densely():
    smaller, mapping = AbstractTree.path(4).without_leaf(3)
    assert smaller == AbstractTree.path(3)
    assert mapping == {0: 0, 1: 1, 2: 2}

    rerooted, mapping = AbstractTree.path(3).without_leaf(0)
    assert rerooted.root == mapping[1] == 0
    with pytest.raises(PreconditionError):
        AbstractTree.path(3).without_leaf(1)


def test_extremal_leaf_prefers_smallest_id():
    assert AbstractTree.path(4).extremal_leaf() == 0
    assert AbstractTree.spider(2, 2).extremal_leaf() == 2


def test_forest_roots_and_order():
    forest = AbstractForest(4, [(0, 1), (2, 3)], roots=[3, 0])
    assert forest.roots == (0, 3)
    assert forest.bfs_order() == [0, 1, 3, 2]
    assert not forest.is_tree
    assert AbstractForest.from_dict(AbstractTree.star(2).to_dict()) == AbstractTree.star(2)


# ================= ROOTED EMBEDDINGS =================

def test_rooted_tree_embedding():
    tree = RootedTreeEmbedding.from_children(0, {0: [1, 4], 1: [2], 4: [3]})
    assert tree.path_to_root(2) == [0, 1, 2]
    assert tree.height == 2
    assert list(tree.edges()) == [(0, 1), (0, 4), (1, 2), (4, 3)]
    assert tree.restricted([0, 1, 4]).is_rooted_subtree_of(tree)
    with pytest.raises(PreconditionError):
        tree.restricted([0, 2])
    with pytest.raises(PreconditionError):
        RootedTreeEmbedding(0, {1: 2, 2: 1})


def test_uniformity():
    tree = RootedTreeEmbedding.from_children(0, {0: [1, 2], 1: [3, 4], 2: [5, 6]})
    assert is_uniform(tree, 2, 2)
    assert not is_uniform(tree, 2, 1)
    assert is_uniform(RootedTreeEmbedding.single(9), 3, 0)
    assert uniform_size(2, 2) == 7


# ================= DEGENERACY =================

@pytest.mark.parametrize(
    "g, expected",
    [
        (complete_graph(5), 4),
        (cycle_graph(6), 2),
        (path_graph(4), 1),
        (Graph.empty(3), 0),
        (complete_bipartite(3, 3), 3),
    ],
)
def test_degeneracy_of_named_graphs(g, expected):
    cert = degeneracy(g)
    assert cert.bound == expected
    assert certificate_violation(g, cert) is None


def test_degeneracy_of_nothing():
    assert degeneracy(Graph.empty(0)) == DegeneracyCertificate((), 0)


def test_degeneracy_inside_a_mask(petersen):
    cert = degeneracy(petersen, within=mask_of(range(5)))
    assert sorted(cert.ordering) == [0, 1, 2, 3, 4]
    assert cert.bound == 2


@pytest.mark.property_based
@given(graphs(max_vertices=10))
@settings(max_examples=150, deadline=None)
def test_degeneracy_matches_core_numbers(g):
    cert = degeneracy(g)
    assert certificate_violation(g, cert) is None
    assert cert.bound == max(nx.core_number(g.to_networkx()).values(), default=0)
    coloring = greedy_color(g, cert)
    assert is_proper_coloring(g, coloring)
    assert color_count(coloring) <= cert.bound + 1


def test_swapped_ordering_is_reported_at_its_position():
    star = complete_bipartite(1, 3)
    cert = degeneracy(star)
    assert cert.bound == 1
    tampered = DegeneracyCertificate((0, 1, 2, 3), 1)
    assert certificate_violation(star, tampered) == 0
    with pytest.raises(CertificateError) as info:
        greedy_color(star, tampered)
    assert info.value.position == 0


def test_incomplete_orderings_are_violations():
    g = path_graph(3)
    assert certificate_violation(g, DegeneracyCertificate((0, 1), 1)) == 2
    assert certificate_violation(g, DegeneracyCertificate((0, 0, 1), 1)) == 1
    assert certificate_violation(g, DegeneracyCertificate((0, 1, 7), 1)) == 2


def test_peel_below_keeps_the_core():
    k4 = complete_graph(4)
    g = Graph.from_edges(5, list(k4.edges()) + [(0, 4)])
    peeled, core = peel_below(g, 3)
    assert peeled == [4]
    assert core == mask_of(range(4))
    peeled, core = peel_below(g, 4)
    assert core == 0 and sorted(peeled) == [0, 1, 2, 3, 4]


# ================= VALIDATORS =================

def test_embedding_validation(c5):
    path = AbstractTree.path(3)
    assert validate_embedding(c5, InducedEmbedding(path, (0, 1, 2)))
    assert not validate_embedding(c5, InducedEmbedding(AbstractTree.path(5), (0, 1, 2, 3, 4)))
    assert not validate_embedding(c5, InducedEmbedding(path, (0, 1, 1)))
    assert InducedEmbedding.from_mapping(path, {0: 4, 1: 0, 2: 1}).image == (4, 0, 1)


def test_biclique_validation(k22_with_pendant):
    assert validate_biclique(k22_with_pendant, BicliqueWitness(frozenset({0, 1}), frozenset({2, 3})))
    assert not validate_biclique(k22_with_pendant, BicliqueWitness(frozenset({0, 1}), frozenset({2, 4})))
    assert not validate_biclique(k22_with_pendant, BicliqueWitness(frozenset({0}), frozenset()))


def test_subgraph_embedding_back_degree():
    triangle = complete_graph(3)
    e = SubgraphEmbedding(AbstractTree.path(3), (0, 1, 2), (0, 1, 2))
    assert not validate_subgraph_embedding(triangle, e, 1)
    assert validate_subgraph_embedding(triangle, e, 2)


def test_induced_cycles_and_paths(c5):
    assert is_induced_cycle(c5, [0, 1, 2, 3, 4])
    assert not is_induced_cycle(c5.with_edges_added([(0, 2)]), [0, 1, 2, 3, 4])
    assert not is_induced_cycle(c5, [0, 1])
    assert is_induced_path(c5, [0, 1, 2, 3])
    assert not is_induced_path(c5, [0, 1, 2, 3, 4])


def test_path_induced_trees_allow_cross_branch_edges(c5):
    tree = RootedTreeEmbedding.from_children(0, {0: [1, 4], 1: [2], 4: [3]})
    assert validate_path_induced(c5, tree)
    long_path = RootedTreeEmbedding.from_children(0, {0: [1], 1: [2], 2: [3], 3: [4]})
    assert not validate_path_induced(c5, long_path)


# ================= CERTIFICATE DICTS =================

def test_certificate_dicts_reject_bad_input():
    with pytest.raises(GraphFormatError):
        certificate_from_dict({"kind": "mystery"})
    with pytest.raises(GraphFormatError):
        certificate_from_dict({"kind": "degeneracy", "ordering": [0]})
    with pytest.raises(GraphFormatError):
        certificate_from_dict({"kind": "biclique", "side_a": [0], "side_b": [1, 2], "s": 2})
