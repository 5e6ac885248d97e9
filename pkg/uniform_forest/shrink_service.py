# uniform_forest/shrink_service.py

from __future__ import annotations

import logging
from typing import Dict, List, Optional, Sequence

from graph_core.errors import ConstructionError, PreconditionError
from graph_core.graph import Graph
from graph_core.rooted_tree import RootedTreeEmbedding, is_uniform
from uniform_forest.badness_service import is_t_bad

logger = logging.getLogger(__name__)


def prune_uniform(
    tree: RootedTreeEmbedding,
    width: int,
    height: Optional[int] = None,
    blocked: int = 0,
) -> Optional[RootedTreeEmbedding]:
    """
    Largest-first search for a ``(width, height)``-uniform rooted subtree.

    A vertex is viable when it sits at depth ``height`` or has at least
    ``width`` viable, unblocked children. Walking down from the root, each
    kept vertex keeps its first ``width`` viable unblocked children in
    ascending id. The root itself is never blocked.

    :param tree: Tree to prune
    :type tree: RootedTreeEmbedding
    :param width: Children per kept internal vertex
    :type width: int
    :param height: Leaf depth of the result (defaults to the tree height)
    :type height: Optional[int]
    :param blocked: Mask of vertices that may not be kept below the root
    :type blocked: int
    :return: The pruned subtree, or ``None`` if none exists
    :rtype: Optional[RootedTreeEmbedding]
    """
    if width < 1:
        raise PreconditionError("width must be at least 1")
    if height is None:
        height = tree.height
    order = list(tree.bfs_order())
    viable: Dict[int, bool] = {}
    for v in reversed(order):
        depth = tree.depth_of(v)
        if depth == height:
            viable[v] = True
        elif depth > height:
            viable[v] = False
        else:
            good = sum(1 for c in tree.children_of(v) if viable[c] and not blocked >> c & 1)
            viable[v] = good >= width
    if not viable[tree.root]:
        return None
    parent: Dict[int, int] = {}
    frontier: List[int] = [tree.root]
    while frontier:
        v = frontier.pop()
        if tree.depth_of(v) == height:
            continue
        kept = [c for c in tree.children_of(v) if viable[c] and not blocked >> c & 1][:width]
        for c in kept:
            parent[c] = v
        frontier.extend(kept)
    return RootedTreeEmbedding(tree.root, parent)


def shrink(g: Graph, t: RootedTreeEmbedding, tt: int, zeta: int, u: int) -> RootedTreeEmbedding:
    """
    A ``(zeta, eta)``-uniform subtree of ``t`` in which ``u`` has no
    neighbour except possibly the root.

    :param g: Host graph
    :type g: Graph
    :param t: ``(tt*zeta, eta)``-uniform tree
    :type t: RootedTreeEmbedding
    :param tt: Biclique parameter
    :type tt: int
    :param zeta: Target branching
    :type zeta: int
    :param u: Outside vertex that is not ``tt``-bad for ``t``
    :type u: int
    :rtype: RootedTreeEmbedding
    :raises PreconditionError: If ``t`` has the wrong shape, ``u`` is in the
        tree or ``u`` is ``tt``-bad
    """
    eta = t.height
    if zeta < 1 or not is_uniform(t, tt * zeta, eta):
        raise PreconditionError(f"tree is not ({tt * zeta},{eta})-uniform")
    report = is_t_bad(g, t, tt, u)
    if report.is_bad:
        raise PreconditionError(f"vertex {u} is {tt}-bad at parent {report.witness_parent}")
    result = prune_uniform(t, zeta, eta, g.neighbours(u))
    if result is None:
        raise ConstructionError("shrink failed although the vertex is not bad")
    return result


def disjointify(
    g: Graph,
    trees: Sequence[RootedTreeEmbedding],
    zeta: int,
    eta: int,
) -> List[RootedTreeEmbedding]:
    """
    Pairwise vertex-disjoint ``(zeta, eta)``-uniform subtrees, one per input
    tree and with the same roots.

    Trees are handled in input order; each is pruned away from every vertex
    already committed to an earlier output.

    :param g: Host graph
    :type g: Graph
    :param trees: ``(k * zeta**(eta+1), eta)``-uniform trees, ``k = len(trees)``
    :type trees: Sequence[RootedTreeEmbedding]
    :param zeta: Target branching, at least 2
    :type zeta: int
    :param eta: Common height
    :type eta: int
    :rtype: List[RootedTreeEmbedding]
    :raises PreconditionError: On a wrong shape, an invalid tree or a root
        lying in another tree
    :raises ConstructionError: If the greedy fails despite the preconditions
    """
    k = len(trees)
    if zeta < 2:
        raise PreconditionError("disjointify needs zeta >= 2")
    width = k * zeta ** (eta + 1)
    for i, tree in enumerate(trees):
        if not is_uniform(tree, width, eta):
            raise PreconditionError(f"tree {i} is not ({width},{eta})-uniform")
        if not tree.is_valid_in(g):
            raise PreconditionError(f"tree {i} is not a subgraph of the host")
        for j, other in enumerate(trees):
            if i != j and tree.root in other:
                raise PreconditionError(f"root of tree {i} lies in tree {j}")

    committed = 0
    result: List[RootedTreeEmbedding] = []
    for i, tree in enumerate(trees):
        pruned = prune_uniform(tree, zeta, eta, committed)
        if pruned is None:
            raise ConstructionError(f"no disjoint subtree for tree {i}")
        committed |= pruned.member_mask
        result.append(pruned)
    logger.debug("disjointified %d trees", k)
    return result
