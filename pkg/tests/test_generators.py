# tests/test_generators.py

from __future__ import annotations

import pytest

from graph_core.errors import PreconditionError
from graph_core.graph import complete_bipartite, cycle_graph
from graph_core.validators import is_induced_cycle, validate_path_induced
from harness.generators import (
    GENERATORS,
    ScaffoldSpec,
    describe,
    gen_biclique_free,
    gen_gnp,
    gen_planted,
    gen_planted_hole,
    gen_projective,
    generate,
    repair_bicliques,
)
from witness_search.biclique_search import find_biclique, tau


def test_gnp_extremes_and_determinism():
    assert gen_gnp(10, 0.0, 7).edge_count == 0
    assert gen_gnp(10, 1.0, 7).edge_count == 45
    assert gen_gnp(20, 0.4, 3) == gen_gnp(20, 0.4, 3)
    assert gen_gnp(0, 0.5, 1).vertex_count == 0
    with pytest.raises(PreconditionError):
        gen_gnp(5, 1.5, 0)
    with pytest.raises(PreconditionError):
        gen_gnp(-1, 0.5, 0)


def test_projective_plane_of_order_two_is_the_heawood_graph():
    g = gen_projective(2)
    assert (g.vertex_count, g.edge_count) == (14, 21)
    assert all(g.degree(v) == 3 for v in g.vertices())
    assert find_biclique(g, 2, 2) is None
    assert tau(g) == 1


def test_projective_plane_of_order_three():
    g = gen_projective(3)
    assert (g.vertex_count, g.edge_count) == (26, 52)
    assert find_biclique(g, 2, 2) is None
    with pytest.raises(PreconditionError):
        gen_projective(4)


@pytest.mark.parametrize("seed", range(10))
def test_planted_root_paths_stay_induced(seed):
    spec = ScaffoldSpec.parse("uniform:2x3", extra_vertices=5)
    g = gen_planted(spec, 0.5, seed)
    assert g.vertex_count == spec.vertex_count == 20
    assert validate_path_induced(g, spec.scaffold())


def test_planted_noise_adds_edges():
    spec = ScaffoldSpec.parse("spider:3x3", extra_vertices=6)
    bare = gen_planted(spec, 0.0, 0)
    assert bare.edge_count == 9
    assert gen_planted(spec, 1.0, 0).edge_count > bare.edge_count


@pytest.mark.parametrize("seed", range(10))
def test_planted_hole_has_no_chord(seed):
    g = gen_planted_hole(9, 6, 0.6, seed)
    assert g.vertex_count == 15
    assert is_induced_cycle(g, list(range(9)))


def test_planted_hole_preconditions():
    with pytest.raises(PreconditionError):
        gen_planted_hole(2, 0, 0.0, 0)
    with pytest.raises(PreconditionError):
        gen_planted_hole(5, 0, -0.1, 0)


def test_repair_deletes_one_edge_per_biclique():
    repaired = repair_bicliques(complete_bipartite(2, 2), 2)
    assert repaired.edge_count == 3
    assert not repaired.has_edge(0, 2)


@pytest.mark.parametrize("seed", range(5))
def test_biclique_free_hosts(seed):
    g = gen_biclique_free(30, 0.3, 2, seed)
    assert find_biclique(g, 2, 2) is None
    assert g.edge_count <= gen_gnp(30, 0.3, seed).edge_count
    with pytest.raises(PreconditionError):
        gen_biclique_free(10, 0.3, 0, seed)


def test_registry():
    assert set(GENERATORS) == {"gnp", "planted", "biclique_free", "projective", "cycle", "planted_hole"}
    assert generate("cycle", {"n": "6"}, 0) == cycle_graph(6)
    assert generate("planted", {"scaffold": "path:4"}, 0).edge_count == 3
    assert generate("gnp", {"n": "12", "p": "0.5"}, 4) == gen_gnp(12, 0.5, 4)
    with pytest.raises(PreconditionError):
        generate("lattice", {}, 0)
    with pytest.raises(PreconditionError):
        generate("gnp", {"n": "5"}, 0)


def test_describe_sorts_keys():
    assert describe({"p": "0.5", "n": "5"}) == "n=5;p=0.5"
    assert describe({}) == ""
