# harness/generators.py

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, List, Optional

import numpy as np

from graph_core.abstract_tree import AbstractTree
from graph_core.errors import PreconditionError
from graph_core.graph import Graph, cycle_graph
from graph_core.rooted_tree import RootedTreeEmbedding
from witness_search.biclique_search import find_biclique
from witness_search.budget import SearchBudget

logger = logging.getLogger(__name__)

PROJECTIVE_PRIMES = (2, 3, 5, 7, 11, 13)


# ==================================================
# RANDOMNESS
# ==================================================

def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator; the same seed always yields the same instance."""
    return np.random.Generator(np.random.PCG64(seed))


def _check_probability(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise PreconditionError(f"edge probability {p} is outside [0, 1]")


def _draws(n: int, seed: int) -> np.ndarray:
    """One uniform draw per vertex pair, read from the upper triangle."""
    return make_rng(seed).random((n, n))


# ==================================================
# PLAIN GENERATORS
# ==================================================

def gen_gnp(n: int, p: float, seed: int) -> Graph:
    """
    Erdős–Rényi ``G(n, p)``.

    :param n: Number of vertices
    :type n: int
    :param p: Edge probability
    :type p: float
    :param seed: PCG64 seed
    :type seed: int
    :rtype: Graph
    """
    if n < 0:
        raise PreconditionError("vertex count must be non-negative")
    _check_probability(p)
    draws = _draws(n, seed)
    rows, cols = np.nonzero(np.triu(draws < p, k=1))
    return Graph.from_edges(n, zip(rows.tolist(), cols.tolist()))


def gen_cycle(n: int) -> Graph:
    return cycle_graph(n)


def gen_projective(q: int) -> Graph:
    """
    Point-line incidence graph of the projective plane over ``GF(q)``.

    Points are vertices ``0..N-1`` and lines ``N..2N-1``, ``N = q*q + q + 1``,
    each given by its normalised coordinate vector (first non-zero entry 1).
    Two lines share exactly one point, so the graph has no ``K_{2,2}``.

    :param q: Prime at most 13
    :type q: int
    :rtype: Graph
    :raises PreconditionError: If ``q`` is not one of the supported primes
    """
    if q not in PROJECTIVE_PRIMES:
        raise PreconditionError(f"q={q} must be a prime in {PROJECTIVE_PRIMES}")
    vectors = [v for v in product(range(q), repeat=3) if any(v) and v[next(i for i in range(3) if v[i])] == 1]
    coords = np.array(vectors, dtype=np.int64)
    incidence = (coords @ coords.T) % q == 0
    size = len(vectors)
    points, lines = np.nonzero(incidence)
    edges = [(int(p), size + int(l)) for p, l in zip(points, lines)]
    return Graph.from_edges(2 * size, edges)


# ==================================================
# PLANTED INSTANCES
# ==================================================

@dataclass(frozen=True)
class ScaffoldSpec:
    """
    A rooted tree planted on vertices ``0..|tree|-1`` of a host with
    ``extra_vertices`` further vertices.
    """

    tree: AbstractTree
    extra_vertices: int = 0

    @classmethod
    def parse(cls, spec: str, extra_vertices: int = 0) -> "ScaffoldSpec":
        return cls(AbstractTree.parse_spec(spec), extra_vertices)

    @property
    def vertex_count(self) -> int:
        return self.tree.vertex_count + self.extra_vertices

    def scaffold(self) -> RootedTreeEmbedding:
        """The planted tree as it sits in the generated host."""
        tree = self.tree
        parent = {v: tree.parent[v] for v in range(tree.vertex_count) if v != tree.root}
        return RootedTreeEmbedding(tree.root, parent)


def _ancestors(tree: AbstractTree) -> List[int]:
    masks = [0] * tree.vertex_count
    for v in tree.bfs_order():
        p = tree.parent[v]
        if p is not None:
            masks[v] = masks[p] | 1 << p
    return masks


def gen_planted(spec: ScaffoldSpec, noise: float, seed: int) -> Graph:
    """
    Plant ``spec.tree`` and add noise edges that never chord a root path.

    A noise pair is rejected when one end is a strict ancestor of the other
    in the planted tree, so every root path stays induced while siblings and
    different branches may become adjacent.

    :param spec: Planted tree and padding
    :type spec: ScaffoldSpec
    :param noise: Probability of each admissible noise edge
    :type noise: float
    :param seed: PCG64 seed
    :type seed: int
    :rtype: Graph
    """
    _check_probability(noise)
    n = spec.vertex_count
    tree = spec.tree
    ancestors = _ancestors(tree)
    edges = set(tree.edges)
    draws = _draws(n, seed)
    rejected = 0
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) in edges or draws[u, v] >= noise:
                continue
            if v < tree.vertex_count and (ancestors[v] >> u & 1 or ancestors[u] >> v & 1):
                rejected += 1
                continue
            edges.add((u, v))
    logger.debug("planted %d-vertex tree, rejected %d chords", tree.vertex_count, rejected)
    return Graph.from_edges(n, sorted(edges))


def gen_planted_hole(length: int, extra_vertices: int, noise: float, seed: int) -> Graph:
    """
    An induced cycle on ``0..length-1`` inside noise that never chords it.
    """
    if length < 3:
        raise PreconditionError("a hole needs at least 3 vertices")
    _check_probability(noise)
    n = length + extra_vertices
    edges = {(i, i + 1) for i in range(length - 1)} | {(0, length - 1)}
    draws = _draws(n, seed)
    for u in range(n):
        for v in range(max(u + 1, length), n):
            if draws[u, v] < noise:
                edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))


# ==================================================
# BICLIQUE REPAIR
# ==================================================

def repair_bicliques(g: Graph, t: int, budget: Optional[SearchBudget] = None) -> Graph:
    """
    Delete one edge of each ``K_{t,t}`` found until none remains.

    The deleted edge joins the smallest vertices of the two sides.

    :raises BudgetExhausted: If a search runs out of budget
    """
    repairs = 0
    while True:
        witness = find_biclique(g, t, t, budget)
        if witness is None:
            break
        g = g.with_edges_removed([(min(witness.side_a), min(witness.side_b))])
        repairs += 1
    if repairs:
        logger.info("removed %d edges to destroy every K_%d,%d", repairs, t, t)
    return g


def gen_biclique_free(n: int, p: float, t: int, seed: int) -> Graph:
    """``G(n, p)`` with edges removed until it has no ``K_{t,t}``."""
    if t < 1:
        raise PreconditionError("t must be at least 1")
    return repair_bicliques(gen_gnp(n, p, seed), t)


# ==================================================
# REGISTRY
# ==================================================

Generator = Callable[[Dict[str, str], int], Graph]


def _param(params: Dict[str, str], key: str, cast: Callable = int, default: Optional[str] = None):
    if key not in params and default is None:
        raise PreconditionError(f"generator parameter {key!r} is missing")
    return cast(params.get(key, default))


GENERATORS: Dict[str, Generator] = {
    "gnp": lambda params, seed: gen_gnp(_param(params, "n"), _param(params, "p", float), seed),
    "planted": lambda params, seed: gen_planted(
        ScaffoldSpec.parse(_param(params, "scaffold", str), _param(params, "extra", int, "0")),
        _param(params, "noise", float, "0"),
        seed,
    ),
    "biclique_free": lambda params, seed: gen_biclique_free(
        _param(params, "n"), _param(params, "p", float), _param(params, "t"), seed
    ),
    "projective": lambda params, seed: gen_projective(_param(params, "q")),
    "cycle": lambda params, seed: gen_cycle(_param(params, "n")),
    "planted_hole": lambda params, seed: gen_planted_hole(
        _param(params, "length"), _param(params, "extra", int, "0"), _param(params, "noise", float, "0"), seed
    ),
}


def generate(name: str, params: Dict[str, str], seed: int) -> Graph:
    """
    Run the generator registered under ``name``.

    :raises PreconditionError: On an unknown generator or a missing parameter
    """
    try:
        generator = GENERATORS[name]
    except KeyError:
        raise PreconditionError(f"unknown generator {name!r}; known: {', '.join(sorted(GENERATORS))}") from None
    return generator(params, seed)


def describe(params: Dict[str, str]) -> str:
    """Stable ``key=value;...`` rendering of generator parameters."""
    return ";".join(f"{k}={params[k]}" for k in sorted(params))
