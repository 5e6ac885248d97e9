# excluded_biclique/weak_kst_service.py

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional

from graph_core.abstract_tree import AbstractTree
from graph_core.certificates import BicliqueWitness, InducedEmbedding
from graph_core.degeneracy_service import color_count, peel_below
from graph_core.errors import BudgetExhausted, ConstructionError, PreconditionError
from graph_core.graph import Graph, iter_bits, lowest_bits
from excluded_biclique.bag_service import BagFamily, pack_bags
from excluded_biclique.local_digraph import LocalDigraph, orient_color
from witness_search.budget import SearchBudget, ensure_budget

logger = logging.getLogger(__name__)


def weak_kst_constant(h_size: int, s: int) -> int:
    """``(2 s |H|) ** (s + |H|)``."""
    return (2 * s * h_size) ** (s + h_size)


@dataclass(frozen=True)
class WeakKstOutcome:
    """
    ``status`` is ``coloring``, ``induced``, ``biclique`` or ``budget``.
    """

    status: str
    coloring: Optional[Dict[int, int]] = None
    embedding: Optional[InducedEmbedding] = None
    witness: Optional[BicliqueWitness] = None
    bound: int = 0
    message: str = ""

    @property
    def colors_used(self) -> int:
        return color_count(self.coloring) if self.coloring else 0


class _WitnessFound(Exception):
    def __init__(self, depth: int, embedding: Optional[InducedEmbedding] = None,
                 witness: Optional[BicliqueWitness] = None) -> None:
        super().__init__("witness found")
        self.depth = depth
        self.embedding = embedding
        self.witness = witness


def _overflow_witness(
    g: Graph, h: AbstractTree, family: BagFamily, core: int, tt: int, depth: int
) -> Optional[_WitnessFound]:
    """
    Turn ``s - 1`` disjoint bags at a vertex of large degree into a witness:
    a neighbour missing some bag completes an induced ``h``, otherwise some
    choice of one vertex per bag has ``tt`` common neighbours with the centre.
    ``None`` when the centre has too few neighbours for either.
    """
    v = family.center
    p = h.extremal_leaf()
    _, mapping = h.without_leaf(p, root=h.neighbours(p)[0])
    spread = family.union
    for u in iter_bits(g.neighbours(v) & core):
        if u in spread:
            continue
        for bag, embedding in zip(family.bags, family.embeddings):
            if not any(g.has_edge(u, x) for x in bag):
                image = {x: embedding.image[mapping[x]] for x in mapping}
                image[p] = u
                return _WitnessFound(depth, embedding=InducedEmbedding.from_mapping(h, image))
    outside = g.neighbours(v) & core
    for x in spread:
        outside &= ~(1 << x)
    for choice in product(*(sorted(bag) for bag in family.bags)):
        common = outside
        for x in choice:
            common &= g.neighbours(x)
        if common.bit_count() >= tt:
            side_a = frozenset((v,) + choice)
            return _WitnessFound(depth, witness=BicliqueWitness(side_a, frozenset(lowest_bits(common, tt))))
    return None


def _greedy_extend(g: Graph, coloring: Dict[int, int], vertices: List[int], mask: int) -> None:
    for v in vertices:
        used = {coloring[u] for u in iter_bits(g.neighbours(v) & mask) if u in coloring}
        color = 0
        while color in used:
            color += 1
        coloring[v] = color


def _color(
    g: Graph,
    mask: int,
    h: AbstractTree,
    s: int,
    tt: int,
    budget: SearchBudget,
    depth: int,
    peel_threshold: Optional[int],
) -> Dict[int, int]:
    if not mask:
        return {}
    if h.vertex_count == 1:
        v = next(iter_bits(mask))
        raise _WitnessFound(depth, embedding=InducedEmbedding(h, (v,)))
    if h.vertex_count == 2:
        for v in iter_bits(mask):
            nbrs = g.neighbours(v) & mask
            if nbrs:
                u = next(iter_bits(nbrs))
                image = (v, u) if h.root == 0 else (u, v)
                raise _WitnessFound(depth, embedding=InducedEmbedding(h, image))
        return {v: 0 for v in iter_bits(mask)}

    threshold = peel_threshold if peel_threshold is not None else weak_kst_constant(h.vertex_count, s) * tt
    peeled, core = peel_below(g, threshold, mask)
    deferred: List[int] = []
    coloring: Dict[int, int] = {}

    p = h.extremal_leaf()
    q = h.neighbours(p)[0]
    h_prime, _ = h.without_leaf(p, root=q)
    families: List[BagFamily] = []
    while core:
        families = []
        for v in iter_bits(core):
            family = pack_bags(g, v, h_prime, s, within=core, budget=budget)
            if family.overflow:
                found = _overflow_witness(g, h, family, core, tt, depth)
                if found is not None:
                    raise found
                if peel_threshold is None:
                    raise ConstructionError(f"vertex {v} has a full bag family but neither witness")
                break
            families.append(family)
        else:
            break
        # only reachable under a lowered threshold: set the vertex aside and repack
        deferred.append(v)
        core &= ~(1 << v)

    if core:
        core_vertices = list(iter_bits(core))
        position = {v: i for i, v in enumerate(core_vertices)}
        arcs = [[position[y] for y in family.union] for family in families]
        out_bound = max((s - 2) * (h.vertex_count - 2), 0)
        classes = orient_color(LocalDigraph(len(core_vertices), arcs), out_bound)
        offset = 0
        for label in sorted(set(classes.values())):
            members = 0
            for i, c in classes.items():
                if c == label:
                    members |= 1 << core_vertices[i]
            part = _color(g, members, h_prime, s, tt, budget, depth + 1, peel_threshold)
            for v, c in part.items():
                coloring[v] = c + offset
            offset += max(part.values(), default=-1) + 1
        logger.debug("depth %d: core of %d vertices split into %d classes", depth, len(core_vertices), len(set(classes.values())))

    _greedy_extend(g, coloring, deferred + list(reversed(peeled)), mask)
    return coloring


def weak_kst_color(
    g: Graph,
    h: AbstractTree,
    s: int,
    tt: int,
    budget: Optional[SearchBudget] = None,
    peel_threshold: Optional[int] = None,
) -> WeakKstOutcome:
    """
    Colour an ``h``-free graph without ``K_{s,tt}`` using at most ``c * tt``
    colours, ``c = (2 s |h|) ** (s + |h|)``, or return the induced ``h`` or
    ``K_{s,tt}`` that prevents it.

    Vertices of degree below ``c * tt`` are peeled and coloured greedily
    last. On the remaining core every vertex packs disjoint bags for ``h``
    minus an extremal leaf; the bags orient a digraph whose colour classes
    are coloured recursively with the smaller tree on disjoint palettes.

    ``peel_threshold`` replaces ``c * tt`` so the bag recursion runs on
    small hosts. A core vertex whose full bag family yields neither witness
    is then set aside and coloured greedily, and the colour bound is not
    asserted.

    :param g: Host graph
    :type g: Graph
    :param h: Tree, rooted anywhere
    :type h: AbstractTree
    :param s: Biclique side size, at least 1
    :type s: int
    :param tt: Biclique side size, at least 1
    :type tt: int
    :param budget: Optional node budget for the bag searches
    :type budget: Optional[SearchBudget]
    :param peel_threshold: Optional degree threshold overriding ``c * tt``
    :type peel_threshold: Optional[int]
    :rtype: WeakKstOutcome
    """
    if s < 1 or tt < 1:
        raise PreconditionError("s and tt must be at least 1")
    if peel_threshold is not None and peel_threshold < 1:
        raise PreconditionError("peel threshold must be at least 1")
    budget = ensure_budget(budget)
    bound = weak_kst_constant(h.vertex_count, s) * tt
    try:
        coloring = _color(g, g.vertex_mask, h, s, tt, budget, 0, peel_threshold)
    except _WitnessFound as found:
        if found.witness is not None:
            return WeakKstOutcome("biclique", witness=found.witness, bound=bound)
        if found.depth > 0:
            raise ConstructionError("a colour class contains the smaller pattern")
        return WeakKstOutcome("induced", embedding=found.embedding, bound=bound)
    except BudgetExhausted as exc:
        logger.warning("weak colouring stopped: %s", exc)
        return WeakKstOutcome("budget", bound=bound, message=str(exc))
    used = color_count(coloring) if coloring else 0
    if peel_threshold is None and used > bound:
        raise ConstructionError(f"{used} colours exceed the bound {bound}")
    logger.info("coloured %d vertices with %d colours (bound %d)", len(coloring), used, bound)
    return WeakKstOutcome("coloring", coloring=coloring, bound=bound)
