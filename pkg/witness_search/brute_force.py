# witness_search/brute_force.py
"""
Exponential reference oracles for small hosts.

Each function recomputes a quantity straight from its definition, sharing no
search code with the backtracking modules, so agreement between the two is a
meaningful check.
"""

from __future__ import annotations

from itertools import combinations
from typing import List, Optional

import networkx as nx
import numpy as np
from networkx.algorithms import isomorphism

from graph_core.abstract_tree import AbstractForest
from graph_core.certificates import BicliqueWitness
from graph_core.errors import PreconditionError
from graph_core.graph import Graph, iter_bits, lowest_bits, mask_of
from graph_core.rooted_tree import RootedTreeEmbedding, is_uniform, uniform_size
from graph_core.validators import validate_path_induced

BRUTE_FORCE_LIMIT = 16


def _require_small(g: Graph) -> None:
    if g.vertex_count > BRUTE_FORCE_LIMIT:
        raise PreconditionError(
            f"brute force needs at most {BRUTE_FORCE_LIMIT} vertices, got {g.vertex_count}"
        )


def brute_degeneracy(g: Graph) -> int:
    """
    Maximum over non-empty vertex subsets ``S`` of the minimum degree of ``g[S]``.

    All ``2^n`` subsets are evaluated at once as a 0/1 membership matrix times
    the adjacency matrix.
    """
    _require_small(g)
    n = g.vertex_count
    if n == 0:
        return 0
    subsets = np.arange(1, 1 << n, dtype=np.int64)
    members = ((subsets[:, None] >> np.arange(n)) & 1).astype(np.int64)
    degrees = members @ g.adjacency_matrix()
    # non-members must not win the minimum
    degrees = np.where(members == 1, degrees, n)
    return int(degrees.min(axis=1).max())


def brute_biclique(g: Graph, s: int, t: int) -> Optional[BicliqueWitness]:
    """
    ``K_{s,t}`` by enumerating every ``s``-subset and its common neighbourhood.
    """
    _require_small(g)
    for side in combinations(range(g.vertex_count), s):
        common = g.common_neighbours(side)
        if common.bit_count() >= t:
            return BicliqueWitness(frozenset(side), frozenset(lowest_bits(common, t)))
    return None


def brute_tau(g: Graph) -> int:
    _require_small(g)
    for t in range(g.vertex_count // 2, 0, -1):
        if brute_biclique(g, t, t) is not None:
            return t
    return 0


def brute_induced_tree(g: Graph, h: AbstractForest, root_image: Optional[int] = None) -> bool:
    """
    True iff some ``|h|``-subset of ``g`` induces a copy of ``h`` (with the
    designated root on ``root_image`` when given), checked by networkx
    isomorphism on every subset.
    """
    _require_small(g)
    pattern = h.to_networkx()
    nx.set_node_attributes(pattern, {v: v == h.roots[0] for v in pattern}, "root")
    host = g.to_networkx()
    for subset in combinations(range(g.vertex_count), h.vertex_count):
        if root_image is not None and root_image not in subset:
            continue
        sub = host.subgraph(subset).copy()
        if sub.number_of_edges() != len(h.edges):
            continue
        if root_image is None:
            if nx.is_isomorphic(sub, pattern):
                return True
            continue
        nx.set_node_attributes(sub, {v: v == root_image for v in sub}, "root")
        matcher = isomorphism.GraphMatcher(sub, pattern, node_match=lambda a, b: a["root"] == b["root"])
        if matcher.is_isomorphic():
            return True
    return False


def brute_long_induced_cycle(g: Graph, ell: int) -> Optional[List[int]]:
    """
    Vertex set of an induced cycle longer than ``ell``: a connected subset in
    which every vertex has exactly two neighbours.
    """
    _require_small(g)
    for size in range(ell + 1, g.vertex_count + 1):
        for subset in combinations(range(g.vertex_count), size):
            mask = mask_of(subset)
            if any(g.degree(v, mask) != 2 for v in subset):
                continue
            if nx.is_connected(g.to_networkx().subgraph(subset)):
                return list(subset)
    return None


def brute_path_induced_uniform(g: Graph, zeta: int, eta: int, root: Optional[int] = None) -> bool:
    """
    True iff a path-induced ``(zeta, eta)``-uniform tree exists.

    Children sets are drawn from all ``zeta``-combinations of unused
    neighbours and the finished tree is checked against the definitions.
    """
    _require_small(g)
    target = uniform_size(zeta, eta)
    if target > g.vertex_count:
        return False
    roots = [root] if root is not None else list(g.vertices())

    def fill(agenda: List[int], parent: dict, depth: dict, used: int, top: int) -> bool:
        if not agenda:
            tree = RootedTreeEmbedding(top, parent)
            return is_uniform(tree, zeta, eta) and validate_path_induced(g, tree)
        v, rest = agenda[0], agenda[1:]
        if depth[v] == eta:
            return fill(rest, parent, depth, used, top)
        pool = list(iter_bits(g.neighbours(v) & ~used))
        for kids in combinations(pool, zeta):
            for c in kids:
                parent[c] = v
                depth[c] = depth[v] + 1
            if fill(rest + list(kids), parent, depth, used | mask_of(kids), top):
                return True
            for c in kids:
                del parent[c]
                del depth[c]
        return False

    return any(fill([r], {}, {r: 0}, 1 << r, r) for r in roots)
