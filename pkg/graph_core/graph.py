# graph_core/graph.py

from __future__ import annotations

from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from graph_core.errors import GraphFormatError, PreconditionError


# ==================================================
# BITSET HELPERS
# ==================================================

def iter_bits(mask: int) -> Iterator[int]:
    """
    Yield the positions of the set bits of ``mask`` in ascending order.

    :param mask: Non-negative bitset
    :type mask: int
    :return: Iterator over vertex ids
    :rtype: Iterator[int]
    """
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    """
    Build a bitset from vertex ids.

    :param vertices: Vertex ids
    :type vertices: Iterable[int]
    :return: Bitset with one bit per vertex
    :rtype: int
    """
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def lowest_bits(mask: int, count: int) -> List[int]:
    """
    Return the ``count`` smallest vertex ids of ``mask``.

    :param mask: Bitset
    :type mask: int
    :param count: How many ids to take
    :type count: int
    :return: Ascending vertex ids (fewer if the mask is smaller)
    :rtype: List[int]
    """
    taken: List[int] = []
    for v in iter_bits(mask):
        if len(taken) == count:
            break
        taken.append(v)
    return taken


# ==================================================
# GRAPH
# ==================================================

class Graph:
    """
    Finite simple undirected graph on dense ids ``0..vertex_count-1``.

    Adjacency is stored as one integer bitset per vertex, so adjacency tests
    are single bit probes and neighbourhood intersections are word-parallel.
    Instances are immutable after construction and safe to share between
    threads.
    """

    __slots__ = ("_n", "_adj", "_labels", "_edge_count")

    def __init__(
        self,
        vertex_count: int,
        adjacency: Sequence[int],
        labels: Optional[Sequence[str]] = None,
    ) -> None:
        """
        Build a graph from per-vertex neighbourhood bitsets.

        :param vertex_count: Number of vertices
        :type vertex_count: int
        :param adjacency: Neighbourhood bitset of every vertex
        :type adjacency: Sequence[int]
        :param labels: Optional external label of every vertex
        :type labels: Optional[Sequence[str]]
        :raises PreconditionError: If adjacency is not symmetric, has loops or
            refers to ids out of range
        """
        if vertex_count < 0 or len(adjacency) != vertex_count:
            raise PreconditionError("adjacency length must equal vertex_count")
        full = (1 << vertex_count) - 1
        for v, nbrs in enumerate(adjacency):
            if nbrs & ~full:
                raise PreconditionError(f"vertex {v} has a neighbour id out of range")
            if nbrs >> v & 1:
                raise PreconditionError(f"vertex {v} is adjacent to itself")
            for u in iter_bits(nbrs):
                if not adjacency[u] >> v & 1:
                    raise PreconditionError(f"adjacency not symmetric on edge {v}-{u}")
        if labels is not None and len(labels) != vertex_count:
            raise PreconditionError("labels length must equal vertex_count")

        self._n: int = vertex_count
        self._adj: Tuple[int, ...] = tuple(adjacency)
        self._labels: Optional[Tuple[str, ...]] = tuple(labels) if labels is not None else None
        self._edge_count: int = sum(nbrs.bit_count() for nbrs in self._adj) // 2

    # ================= CONSTRUCTION =================

    @classmethod
    def from_edges(
        cls,
        vertex_count: int,
        edges: Iterable[Tuple[int, int]],
        labels: Optional[Sequence[str]] = None,
    ) -> "Graph":
        """
        Build a graph from an edge list, rejecting loops and repeated edges.

        :param vertex_count: Number of vertices
        :type vertex_count: int
        :param edges: Pairs of vertex ids
        :type edges: Iterable[Tuple[int, int]]
        :param labels: Optional external labels
        :type labels: Optional[Sequence[str]]
        :return: The graph
        :rtype: Graph
        :raises GraphFormatError: On loops, parallel edges or bad ids
        """
        adj = [0] * vertex_count
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphFormatError(f"edge {u}-{v} refers to a vertex out of range")
            if u == v:
                raise GraphFormatError(f"loop at vertex {u}")
            if adj[u] >> v & 1:
                raise GraphFormatError(f"parallel edge {u}-{v}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(vertex_count, adj, labels)

    @classmethod
    def empty(cls, vertex_count: int) -> "Graph":
        """Edgeless graph on ``vertex_count`` vertices."""
        return cls(vertex_count, [0] * vertex_count)

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph) -> "Graph":
        """
        Convert a networkx graph, relabelling nodes in sorted order.

        :param nx_graph: Simple undirected networkx graph
        :type nx_graph: nx.Graph
        :return: Equivalent graph with ``str`` labels
        :rtype: Graph
        """
        nodes = sorted(nx_graph.nodes(), key=repr)
        index = {node: i for i, node in enumerate(nodes)}
        edges = [(index[a], index[b]) for a, b in nx_graph.edges() if a != b]
        return cls.from_edges(len(nodes), edges, [str(node) for node in nodes])

    # ================= QUERIES =================

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return self._edge_count

    @property
    def labels(self) -> Optional[Tuple[str, ...]]:
        return self._labels

    @property
    def vertex_mask(self) -> int:
        return (1 << self._n) - 1

    def vertices(self) -> range:
        return range(self._n)

    def neighbours(self, v: int) -> int:
        """
        Neighbourhood bitset of ``v``.

        :param v: Vertex id
        :type v: int
        :rtype: int
        """
        return self._adj[v]

    def neighbour_list(self, v: int) -> List[int]:
        return list(iter_bits(self._adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def degree(self, v: int, within: Optional[int] = None) -> int:
        """
        Degree of ``v``, optionally counted inside a vertex mask.

        :param v: Vertex id
        :type v: int
        :param within: Optional bitset restricting the neighbours counted
        :type within: Optional[int]
        :rtype: int
        """
        nbrs = self._adj[v] if within is None else self._adj[v] & within
        return nbrs.bit_count()

    def max_degree(self) -> int:
        return max((nbrs.bit_count() for nbrs in self._adj), default=0)

    def edges(self) -> Iterator[Tuple[int, int]]:
        """
        Yield every edge once as ``(u, v)`` with ``u < v``, in lexicographic order.
        """
        for u, nbrs in enumerate(self._adj):
            for v in iter_bits(nbrs >> (u + 1) << (u + 1)):
                yield u, v

    def common_neighbours(self, vertices: Iterable[int]) -> int:
        """
        Bitset of the vertices adjacent to every vertex in ``vertices``.
        """
        common = self.vertex_mask
        for v in vertices:
            common &= self._adj[v]
        return common

    def label_of(self, v: int) -> str:
        return self._labels[v] if self._labels is not None else str(v)

    # ================= DERIVED GRAPHS =================

    def induced_subgraph(self, vertices: Iterable[int]) -> Tuple["Graph", List[int]]:
        """
        Induced subgraph on ``vertices``, relabelled densely.

        :param vertices: Vertex ids to keep
        :type vertices: Iterable[int]
        :return: The subgraph and the list mapping new ids to old ids
        :rtype: Tuple[Graph, List[int]]
        """
        kept = sorted(set(vertices))
        position = {v: i for i, v in enumerate(kept)}
        adj = [0] * len(kept)
        for i, v in enumerate(kept):
            for u in iter_bits(self._adj[v]):
                j = position.get(u)
                if j is not None:
                    adj[i] |= 1 << j
        labels = [self.label_of(v) for v in kept] if self._labels is not None else None
        return Graph(len(kept), adj, labels), kept

    def with_edges_removed(self, removed: Iterable[Tuple[int, int]]) -> "Graph":
        adj = list(self._adj)
        for u, v in removed:
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        return Graph(self._n, adj, self._labels)

    def with_edges_added(self, added: Iterable[Tuple[int, int]]) -> "Graph":
        adj = list(self._adj)
        for u, v in added:
            if u == v:
                raise PreconditionError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(self._n, adj, self._labels)

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self._n
        adj = list(self._adj) + [nbrs << shift for nbrs in other._adj]
        return Graph(self._n + other._n, adj)

    # ================= EXPORT =================

    def adjacency_matrix(self) -> np.ndarray:
        """
        Dense 0/1 adjacency matrix.

        :rtype: np.ndarray
        """
        matrix = np.zeros((self._n, self._n), dtype=np.int64)
        for u, v in self.edges():
            matrix[u, v] = 1
            matrix[v, u] = 1
        return matrix

    def to_networkx(self) -> nx.Graph:
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self._n))
        nx_graph.add_edges_from(self.edges())
        return nx_graph

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._edge_count})"


# ==================================================
# SMALL NAMED GRAPHS
# ==================================================

def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(s: int, t: int) -> Graph:
    """K_{s,t} with sides ``0..s-1`` and ``s..s+t-1``."""
    return Graph.from_edges(s + t, [(a, s + b) for a in range(s) for b in range(t)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)

