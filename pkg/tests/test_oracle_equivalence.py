# tests/test_oracle_equivalence.py
"""
Backtracking searches against the brute-force oracles and networkx.
"""

from __future__ import annotations

from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graph_core.abstract_tree import AbstractTree
from graph_core.degeneracy_service import certificate_violation, degeneracy
from graph_core.graph import Graph
from graph_core.validators import is_induced_cycle, validate_biclique, validate_embedding
from harness.generators import gen_gnp
from witness_search.biclique_search import find_biclique, tau
from witness_search.brute_force import (
    BRUTE_FORCE_LIMIT,
    brute_biclique,
    brute_degeneracy,
    brute_induced_tree,
    brute_long_induced_cycle,
    brute_tau,
)
from witness_search.induced_search import find_induced_tree, find_long_induced_cycle
from tests.strategies import graphs

PATTERNS = [
    AbstractTree.path(3),
    AbstractTree.path(4),
    AbstractTree.star(3),
    AbstractTree.spider(2, 2),
    AbstractTree.uniform(2, 1),
]


def _all_labelled_graphs(max_vertices: int):
    for n in range(max_vertices + 1):
        pairs = list(combinations(range(n), 2))
        for bits in range(1 << len(pairs)):
            yield Graph.from_edges(n, [pair for i, pair in enumerate(pairs) if bits >> i & 1])


def _atlas_graphs(vertex_count: int):
    for nx_graph in nx.graph_atlas_g():
        if nx_graph.number_of_nodes() == vertex_count:
            yield Graph.from_networkx(nx_graph)


def _check_degeneracy_and_tau(g: Graph) -> None:
    cert = degeneracy(g)
    assert certificate_violation(g, cert) is None
    assert cert.bound == brute_degeneracy(g)
    assert tau(g) == brute_tau(g)


def test_every_labelled_graph_up_to_five_vertices():
    count = 0
    for g in _all_labelled_graphs(5):
        _check_degeneracy_and_tau(g)
        count += 1
    assert count == 1 + 1 + 2 + 8 + 64 + 1024


@pytest.mark.slow
def test_atlas_graphs_on_seven_vertices():
    atlas = list(_atlas_graphs(7))
    assert len(atlas) == 1044
    for g in atlas:
        _check_degeneracy_and_tau(g)


@pytest.mark.slow
@pytest.mark.parametrize("p", [0.2, 0.5, 0.8])
def test_seeded_random_graphs(p):
    for seed in range(167):
        g = gen_gnp(4 + seed % 9, p, seed)
        assert g.vertex_count <= 12 <= BRUTE_FORCE_LIMIT
        _check_degeneracy_and_tau(g)


@pytest.mark.property_based
@given(graphs(max_vertices=8), st.integers(1, 3), st.integers(1, 3))
@settings(max_examples=200, deadline=None)
def test_biclique_existence_agrees(g, s, t):
    found = find_biclique(g, s, t)
    assert (found is None) == (brute_biclique(g, s, t) is None)
    if found is not None:
        assert validate_biclique(g, found)
        assert (found.s, found.t) == (s, t)


@pytest.mark.property_based
@given(graphs(min_vertices=1, max_vertices=8), st.sampled_from(PATTERNS), st.booleans())
@settings(max_examples=200, deadline=None)
def test_induced_tree_existence_agrees(g, h, pin_root):
    root_image = 0 if pin_root else None
    found = find_induced_tree(g, h, root_image=root_image)
    assert (found is not None) == brute_induced_tree(g, h, root_image)
    if found is not None:
        assert validate_embedding(g, found)
        if pin_root:
            assert found.image[h.root] == 0


@pytest.mark.property_based
@given(graphs(max_vertices=8), st.integers(3, 6))
@settings(max_examples=200, deadline=None)
def test_long_hole_existence_agrees(g, ell):
    found = find_long_induced_cycle(g, ell)
    assert (found is None) == (brute_long_induced_cycle(g, ell) is None)
    if found is not None:
        assert len(found) > ell
        assert is_induced_cycle(g, found)
