# uniform_forest/badness_service.py

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Optional, Tuple

from graph_core.certificates import BicliqueWitness
from graph_core.errors import PreconditionError
from graph_core.graph import Graph, mask_of
from graph_core.rooted_tree import RootedTreeEmbedding, is_uniform
from witness_search.biclique_search import find_biclique
from witness_search.budget import SearchBudget

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BadnessReport:
    """
    Outcome of a badness test for one outside vertex.

    ``witness_parent`` is the smallest tree vertex whose children certify
    badness, ``None`` when the vertex is clean.
    """

    subject: int
    witness_parent: Optional[int]
    threshold: Fraction
    adjacent_children: int = 0

    @property
    def is_bad(self) -> bool:
        return self.witness_parent is not None


@dataclass(frozen=True)
class BadVertexAudit:
    bad: FrozenSet[int]
    bound: int
    within_bound: bool
    biclique: Optional[BicliqueWitness] = None


def uniform_shape(t: RootedTreeEmbedding) -> Tuple[int, int]:
    """
    ``(zeta, eta)`` of a uniform tree, read off the root.

    :raises PreconditionError: If ``t`` is not uniform
    """
    eta = t.height
    zeta = len(t.children_of(t.root)) if eta > 0 else 1
    if not is_uniform(t, zeta, eta):
        raise PreconditionError("tree is not uniform")
    return zeta, eta


def _children_masks(t: RootedTreeEmbedding) -> Dict[int, int]:
    return {w: mask_of(t.children_of(w)) for w in t.internal_vertices()}


def is_t_bad(g: Graph, t: RootedTreeEmbedding, tt: int, u: int) -> BadnessReport:
    """
    Test whether ``u`` is adjacent to more than ``(tt-1)*zeta/tt`` children
    of some vertex of the uniform tree ``t``.

    :param g: Host graph
    :type g: Graph
    :param t: Uniform rooted tree in ``g``
    :type t: RootedTreeEmbedding
    :param tt: Biclique parameter
    :type tt: int
    :param u: Vertex outside the tree
    :type u: int
    :return: Report naming the smallest witnessing parent, if any
    :rtype: BadnessReport
    :raises PreconditionError: If ``u`` is a tree vertex or ``t`` is not uniform
    """
    if u in t:
        raise PreconditionError(f"vertex {u} lies inside the tree")
    if tt < 1:
        raise PreconditionError("tt must be at least 1")
    zeta, _ = uniform_shape(t)
    threshold = Fraction((tt - 1) * zeta, tt)
    nbrs = g.neighbours(u)
    for w, kids in sorted(_children_masks(t).items()):
        count = (nbrs & kids).bit_count()
        if count > threshold:
            return BadnessReport(u, w, threshold, count)
    return BadnessReport(u, None, threshold)


def bad_vertex_set(
    g: Graph,
    t: RootedTreeEmbedding,
    tt: int,
    check_biclique: bool = False,
    budget: Optional[SearchBudget] = None,
) -> BadVertexAudit:
    """
    Every ``tt``-bad vertex outside ``t``, audited against ``zeta**eta * (tt-1)``.

    The bound only holds in hosts without ``K_{tt,tt}``; with
    ``check_biclique`` the host is searched and any biclique found is
    attached to the audit.

    :raises PreconditionError: If ``tt`` does not divide ``zeta``
    """
    zeta, eta = uniform_shape(t)
    if tt < 1 or zeta % tt:
        raise PreconditionError(f"tt={tt} must divide zeta={zeta}")
    masks = _children_masks(t)
    bad = set()
    for u in g.vertices():
        if u in t:
            continue
        nbrs = g.neighbours(u)
        if any((nbrs & kids).bit_count() * tt > (tt - 1) * zeta for kids in masks.values()):
            bad.add(u)
    bound = zeta ** eta * (tt - 1)
    within = len(bad) <= bound
    witness = find_biclique(g, tt, tt, budget) if check_biclique else None
    if not within:
        logger.warning("%d bad vertices exceed the bound %d", len(bad), bound)
    return BadVertexAudit(frozenset(bad), bound, within, witness)
