# graph_core/validators.py

from __future__ import annotations

from typing import Sequence

from graph_core.certificates import BicliqueWitness, InducedEmbedding, SubgraphEmbedding
from graph_core.graph import Graph, mask_of
from graph_core.rooted_tree import RootedTreeEmbedding


def validate_path_induced(g: Graph, t: RootedTreeEmbedding) -> bool:
    """
    True iff every path of ``t`` starting at the root is an induced path of ``g``.

    Walks the tree keeping the bitset of the current root path; a child must
    be adjacent to its parent and to no other vertex of the path above it.
    Chords between different branches are allowed.

    :param g: Host graph
    :type g: Graph
    :param t: Rooted tree embedded in ``g``
    :type t: RootedTreeEmbedding
    :rtype: bool
    """
    if not t.is_valid_in(g):
        return False
    stack = [(t.root, 0)]
    while stack:
        v, above = stack.pop()
        for c in t.children_of(v):
            if g.neighbours(c) & above:
                return False
            stack.append((c, above | 1 << v))
    return True


def validate_embedding(g: Graph, e: InducedEmbedding) -> bool:
    """
    True iff ``e`` is injective and maps pattern adjacency exactly onto host adjacency.
    """
    n = e.pattern.vertex_count
    if len(e.image) != n or len(set(e.image)) != n:
        return False
    if any(not 0 <= x < g.vertex_count for x in e.image):
        return False
    for u in range(n):
        for v in range(u + 1, n):
            if e.pattern.has_edge(u, v) != g.has_edge(e.image[u], e.image[v]):
                return False
    return True


def validate_subgraph_embedding(g: Graph, e: SubgraphEmbedding, max_back_degree: int) -> bool:
    """
    True iff ``e`` is an injective (not necessarily induced) subgraph
    embedding and every vertex of ``e.ordering`` has at most
    ``max_back_degree`` host neighbours earlier in the ordering.
    """
    n = e.pattern.vertex_count
    if len(e.image) != n or len(set(e.image)) != n:
        return False
    if any(not 0 <= x < g.vertex_count for x in e.image):
        return False
    if any(not g.has_edge(e.image[u], e.image[v]) for u, v in e.pattern.edges):
        return False
    if sorted(e.ordering) != sorted(e.image):
        return False
    earlier = 0
    for v in e.ordering:
        if g.degree(v, earlier) > max_back_degree:
            return False
        earlier |= 1 << v
    return True


def validate_biclique(g: Graph, w: BicliqueWitness) -> bool:
    """
    True iff the sides are non-empty, disjoint host vertex sets with all cross pairs adjacent.
    """
    if not w.side_a or not w.side_b or w.side_a & w.side_b:
        return False
    if any(not 0 <= v < g.vertex_count for v in w.side_a | w.side_b):
        return False
    side_b = mask_of(w.side_b)
    return all(g.neighbours(a) & side_b == side_b for a in w.side_a)


def is_induced_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    """
    True iff ``cycle`` lists at least three distinct vertices that induce a
    cycle of ``g`` in this cyclic order.

    :param g: Host graph
    :type g: Graph
    :param cycle: Vertices in cyclic order
    :type cycle: Sequence[int]
    :rtype: bool
    """
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        return False
    members = mask_of(cycle)
    for i, v in enumerate(cycle):
        expected = 1 << cycle[i - 1] | 1 << cycle[(i + 1) % k]
        if g.neighbours(v) & members != expected:
            return False
    return True


def is_induced_path(g: Graph, path: Sequence[int]) -> bool:
    """
    True iff ``path`` lists distinct vertices inducing exactly the path edges.
    """
    if len(set(path)) != len(path):
        return False
    members = mask_of(path)
    for i, v in enumerate(path):
        expected = 0
        if i > 0:
            expected |= 1 << path[i - 1]
        if i + 1 < len(path):
            expected |= 1 << path[i + 1]
        if g.neighbours(v) & members != expected:
            return False
    return True
