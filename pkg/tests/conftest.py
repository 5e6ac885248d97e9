# tests/conftest.py

from __future__ import annotations

import pytest

from graph_core.graph import Graph, complete_bipartite, cycle_graph, petersen_graph


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path_factory, monkeypatch):
    """Keep every test away from the real user data directory."""
    home = tmp_path_factory.mktemp("settings")
    monkeypatch.setenv("DEGENERACY_LAB_HOME", str(home))
    return home


@pytest.fixture
def c5() -> Graph:
    return cycle_graph(5)


@pytest.fixture
def petersen() -> Graph:
    return petersen_graph()


@pytest.fixture
def k22_with_pendant() -> Graph:
    """K_{2,2} on 0..3 plus vertex 4 hanging off vertex 0."""
    g = complete_bipartite(2, 2)
    return Graph.from_edges(5, list(g.edges()) + [(0, 4)])
