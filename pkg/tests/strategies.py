# tests/strategies.py

from __future__ import annotations

from itertools import combinations

from hypothesis import strategies as st

from graph_core.graph import Graph


@st.composite
def graphs(draw, min_vertices: int = 0, max_vertices: int = 8) -> Graph:
    """Simple graphs on a drawn vertex count, every pair an independent coin."""
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [pair for pair, keep in zip(pairs, chosen) if keep])
