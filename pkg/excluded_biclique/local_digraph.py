# excluded_biclique/local_digraph.py

from __future__ import annotations

import logging
from typing import Dict, FrozenSet, Iterable, List, Sequence

from graph_core.degeneracy_service import degeneracy, greedy_color
from graph_core.errors import ConstructionError, PreconditionError
from graph_core.graph import Graph

logger = logging.getLogger(__name__)


class LocalDigraph:
    """
    Small digraph on ``0..vertex_count-1`` used only inside colouring steps.
    """

    def __init__(self, vertex_count: int, out_neighbours: Sequence[Iterable[int]]) -> None:
        """
        :param vertex_count: Number of vertices
        :type vertex_count: int
        :param out_neighbours: Heads of the arcs leaving each vertex
        :type out_neighbours: Sequence[Iterable[int]]
        :raises PreconditionError: On a self-arc or an id out of range
        """
        if len(out_neighbours) != vertex_count:
            raise PreconditionError("one out-neighbour list per vertex is required")
        self.vertex_count: int = vertex_count
        self.out: List[FrozenSet[int]] = []
        for v, heads in enumerate(out_neighbours):
            heads = frozenset(heads)
            if v in heads:
                raise PreconditionError(f"self-arc at {v}")
            if any(not 0 <= w < vertex_count for w in heads):
                raise PreconditionError(f"arc from {v} leaves the vertex range")
            self.out.append(heads)

    def out_degree(self, v: int) -> int:
        return len(self.out[v])

    def max_out_degree(self) -> int:
        return max((len(heads) for heads in self.out), default=0)

    def underlying(self) -> Graph:
        """Undirected graph with an edge wherever an arc exists in either direction."""
        adjacency = [0] * self.vertex_count
        for v, heads in enumerate(self.out):
            for w in heads:
                adjacency[v] |= 1 << w
                adjacency[w] |= 1 << v
        return Graph(self.vertex_count, adjacency)


def orient_color(j: LocalDigraph, k: int) -> Dict[int, int]:
    """
    Properly colour the underlying graph of ``j`` with at most ``2k + 1`` colours.

    Every subgraph of the underlying graph has at most ``k`` edges per
    vertex, so it is ``2k``-degenerate and a peeling order colours it
    greedily.

    :param j: Digraph with every out-degree at most ``k``
    :type j: LocalDigraph
    :param k: Out-degree bound
    :type k: int
    :return: Map vertex -> colour
    :rtype: Dict[int, int]
    :raises PreconditionError: If some out-degree exceeds ``k``
    """
    worst = j.max_out_degree()
    if worst > k:
        raise PreconditionError(f"out-degree {worst} exceeds {k}")
    underlying = j.underlying()
    cert = degeneracy(underlying)
    if cert.bound > 2 * k:
        raise ConstructionError(f"underlying graph has degeneracy {cert.bound} above {2 * k}")
    return greedy_color(underlying, cert)
