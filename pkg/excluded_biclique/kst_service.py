# excluded_biclique/kst_service.py

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional

from graph_core.abstract_tree import AbstractForest, AbstractTree
from graph_core.certificates import BicliqueWitness, DegeneracyCertificate, InducedEmbedding, SubgraphEmbedding
from graph_core.degeneracy_service import degeneracy, peel_below
from graph_core.errors import BudgetExhausted, ConstructionError, PreconditionError
from graph_core.graph import Graph, iter_bits, lowest_bits, mask_of
from graph_core.validators import validate_subgraph_embedding
from witness_search.biclique_search import find_biclique
from witness_search.budget import SearchBudget, ensure_budget
from witness_search.induced_search import find_induced_tree

logger = logging.getLogger(__name__)

KST_STATUSES = ("certificate", "biclique", "induced", "bad_s_tree", "budget")


def kst_constant(s_size: int, s: int) -> int:
    """``|S| ** s``."""
    return s_size ** s


@dataclass(frozen=True)
class BackBoundedOutcome:
    """
    ``status`` is ``tree`` (``embedding`` set), ``biclique`` (``witness``
    set) or ``low_degree`` (``vertex`` had only ``degree`` neighbours).
    """

    status: str
    embedding: Optional[SubgraphEmbedding] = None
    witness: Optional[BicliqueWitness] = None
    vertex: Optional[int] = None
    degree: int = 0


@dataclass(frozen=True)
class KstOutcome:
    status: str
    certificate: Optional[DegeneracyCertificate] = None
    witness: Optional[BicliqueWitness] = None
    embedding: Optional[InducedEmbedding] = None
    tree: Optional[SubgraphEmbedding] = None
    bound: int = 0
    message: str = ""


def _common_biclique(g: Graph, placed: List[int], s: int, tt: int, allowed: int) -> Optional[BicliqueWitness]:
    for side in combinations(sorted(placed), s):
        common = allowed
        for x in side:
            common &= g.neighbours(x)
        if common.bit_count() >= tt:
            return BicliqueWitness(frozenset(side), frozenset(lowest_bits(common, tt)))
    return None


def build_back_bounded_tree(
    g: Graph,
    r: AbstractTree,
    s: int,
    tt: int,
    within: Optional[int] = None,
) -> BackBoundedOutcome:
    """
    Embed ``r`` as a subgraph whose image ordering has back-degree at most ``s - 1``.

    Vertices of ``r`` are placed in BFS order, the root on the smallest
    vertex of ``within``. Each new vertex is the smallest unused neighbour of
    its parent's image with at most ``s - 1`` neighbours among the images
    placed so far. When no such neighbour exists, every ``s``-subset of the
    placed images is tested for ``tt`` common neighbours; failing that, the
    parent's image has degree below ``tt * |r| ** s``.

    :param g: Host graph
    :type g: Graph
    :param r: Tree to embed
    :type r: AbstractTree
    :param s: Back-degree bound plus one, at least 1
    :type s: int
    :param tt: Biclique side size, at least 1
    :type tt: int
    :param within: Optional vertex mask to build in
    :type within: Optional[int]
    :rtype: BackBoundedOutcome
    :raises PreconditionError: If ``s`` or ``tt`` is below 1 or ``within`` is empty
    """
    if s < 1 or tt < 1:
        raise PreconditionError("s and tt must be at least 1")
    allowed = g.vertex_mask if within is None else within
    if not allowed:
        raise PreconditionError("cannot build a tree in an empty vertex set")
    order = r.bfs_order()
    image: Dict[int, int] = {order[0]: next(iter_bits(allowed))}
    placed = [image[order[0]]]
    used = 1 << placed[0]
    for x in order[1:]:
        v = image[r.parent[x]]
        for u in iter_bits(g.neighbours(v) & allowed & ~used):
            if g.degree(u, used) <= s - 1:
                break
        else:
            witness = _common_biclique(g, placed, s, tt, allowed)
            if witness is not None:
                logger.info("tree building hit K_%d,%d after %d vertices", s, tt, len(placed))
                return BackBoundedOutcome("biclique", witness=witness)
            return BackBoundedOutcome("low_degree", vertex=v, degree=g.degree(v, allowed))
        image[x] = u
        placed.append(u)
        used |= 1 << u
    mapping = tuple(image[x] for x in range(r.vertex_count))
    return BackBoundedOutcome("tree", embedding=SubgraphEmbedding(r, mapping, tuple(placed)))


def kst_pipeline(
    g: Graph,
    s_tree: AbstractTree,
    h: AbstractForest,
    s: int,
    tt: int,
    budget: Optional[SearchBudget] = None,
) -> KstOutcome:
    """
    Certify ``degeneracy < |S|**s * tt`` or find what prevents it.

    ``s_tree`` must be a tree whose presence as a subgraph forces
    ``K_{s,s}`` in every ``h``-free host; it is not constructed here. If the
    degeneracy is below the bound the peeling order is the certificate.
    Otherwise the tree is built with bounded back-degree inside the core of
    minimum degree ``|S|**s * tt``, which either meets a ``K_{s,tt}`` or
    yields a copy of ``s_tree`` without ``K_{s,s}``; in the latter case the
    host must contain an induced ``h``, and if it does not, ``s_tree`` is
    reported as a bad input.

    :param g: Host graph
    :type g: Graph
    :param s_tree: Tree forcing ``K_{s,s}`` in ``h``-free graphs
    :type s_tree: AbstractTree
    :param h: Forest the host should exclude
    :type h: AbstractForest
    :param s: Biclique side size
    :type s: int
    :param tt: Biclique side size
    :type tt: int
    :param budget: Optional node budget for the searches
    :type budget: Optional[SearchBudget]
    :rtype: KstOutcome
    :raises ConstructionError: If the built tree contradicts its own ordering
    """
    if s < 1 or tt < 1:
        raise PreconditionError("s and tt must be at least 1")
    budget = ensure_budget(budget)
    bound = kst_constant(s_tree.vertex_count, s) * tt
    cert = degeneracy(g)
    if cert.bound < bound:
        return KstOutcome("certificate", certificate=cert, bound=bound)

    _, core = peel_below(g, bound)
    logger.info("degeneracy %d reaches %d; building the tree in a core of %d vertices", cert.bound, bound, core.bit_count())
    built = build_back_bounded_tree(g, s_tree, s, tt, within=core)
    if built.status == "biclique":
        return KstOutcome("biclique", witness=built.witness, bound=bound)
    if built.status == "low_degree":
        raise ConstructionError(f"core vertex {built.vertex} has degree {built.degree} below {bound}")
    tree = built.embedding
    if not validate_subgraph_embedding(g, tree, s - 1):
        raise ConstructionError("built tree breaks its back-degree ordering")
    try:
        if find_biclique(g, s, s, budget, within=mask_of(tree.image)) is not None:
            raise ConstructionError(f"K_{s},{s} inside a tree with back-degree below {s}")
        embedding = find_induced_tree(g, h, budget=budget)
    except BudgetExhausted as exc:
        logger.warning("biclique pipeline stopped: %s", exc)
        return KstOutcome("budget", tree=tree, bound=bound, message=str(exc))
    if embedding is not None:
        return KstOutcome("induced", embedding=embedding, tree=tree, bound=bound)
    logger.warning("host holds a copy of the supplied tree but neither K_%d,%d nor the forest", s, s)
    return KstOutcome("bad_s_tree", tree=tree, bound=bound, message="supplied S does not force K_{s,s}")
