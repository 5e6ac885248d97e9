# tree_grower/grow_service.py

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional

from graph_core.abstract_tree import AbstractTree
from graph_core.certificates import BicliqueWitness, InducedEmbedding
from graph_core.errors import BudgetExhausted, ConstructionError, GrowthStalled, PreconditionError
from graph_core.graph import Graph
from graph_core.rooted_tree import RootedTreeEmbedding
from graph_core.validators import validate_embedding
from tree_grower.bounds import zeta_schedule
from tree_grower.decorated_tree import DecoratedTree, decoration_of, single_vertex_decorated, validate_decorated
from uniform_forest.badness_service import is_t_bad
from uniform_forest.path_induced_search import find_path_induced_uniform
from uniform_forest.shrink_service import prune_uniform, shrink
from witness_search.biclique_search import find_biclique
from witness_search.budget import SearchBudget, ensure_budget

logger = logging.getLogger(__name__)

GROWTH_STATUSES = ("embedded", "no_uniform_tree", "biclique", "stalled", "budget")


@dataclass(frozen=True)
class GrowthOutcome:
    """
    Result of growing a target tree.

    ``stage`` is the number of target vertices placed when growth ended.
    """

    status: str
    embedding: Optional[InducedEmbedding] = None
    decorated: Optional[DecoratedTree] = None
    stage: int = 0
    witness: Optional[BicliqueWitness] = None
    message: str = ""


# ================= ONE STEP =================

def _assemble(
    d: DecoratedTree,
    p: int,
    q: int,
    kept: Dict[int, RootedTreeEmbedding],
    zeta: int,
) -> DecoratedTree:
    skeleton_parent = d.skeleton.parent
    skeleton_parent[q] = p
    scaffold_parent = dict(skeleton_parent)
    for part in kept.values():
        scaffold_parent.update(part.parent)
    root = d.skeleton.root
    return DecoratedTree(
        RootedTreeEmbedding(root, skeleton_parent),
        RootedTreeEmbedding(root, scaffold_parent),
        zeta,
        d.eta,
    )


def grow_step(
    g: Graph,
    d: DecoratedTree,
    p: int,
    zeta: int,
    tt: int,
    strict: bool = True,
) -> DecoratedTree:
    """
    Add one child ``q`` of ``p`` to the skeleton, re-decorating with width ``zeta``.

    Strict mode follows the counting argument: every decoration is first cut
    to a ``(tt*zeta)``-uniform core, ``q`` is the smallest child of ``p`` in
    its decoration that avoids the core at ``p`` and is ``tt``-bad for no
    core, and each core is then shrunk away from ``q``. Permissive mode skips
    the width arithmetic and accepts the smallest ``q`` for which every
    decoration can be pruned to width ``zeta`` away from ``q``'s
    neighbourhood.

    :param g: Host graph
    :type g: Graph
    :param d: Decorated tree with width ``d.zeta``
    :type d: DecoratedTree
    :param p: Skeleton vertex of height below ``d.eta``
    :type p: int
    :param zeta: Width of the result
    :type zeta: int
    :param tt: Biclique parameter
    :type tt: int
    :param strict: Enforce the width precondition and the proof's choice of ``q``
    :type strict: bool
    :return: Decorated tree whose skeleton has one more vertex
    :rtype: DecoratedTree
    :raises PreconditionError: If ``d`` is not decorated, ``p`` is misplaced
        or (strict) ``d.zeta`` is too small
    :raises ConstructionError: If strict mode finds no eligible ``q``
    :raises GrowthStalled: If permissive mode finds no eligible ``q``
    """
    report = validate_decorated(g, d)
    if not report:
        raise PreconditionError(f"input is not decorated: {report.message}")
    if p not in d.skeleton:
        raise PreconditionError(f"vertex {p} is not in the skeleton")
    height_p = d.skeleton.depth_of(p)
    if height_p >= d.eta:
        raise PreconditionError(f"vertex {p} has height {height_p}, not below {d.eta}")
    if zeta < 1 or tt < 1:
        raise PreconditionError("zeta and tt must be at least 1")

    decorations = {v: decoration_of(d, v) for v in sorted(d.skeleton.members)}
    heights = {v: d.eta - d.skeleton.depth_of(v) for v in decorations}
    candidates = list(decorations[p].children_of(p))

    if strict:
        needed = zeta ** d.eta * d.skeleton.size * tt ** (d.eta + 1)
        if d.zeta < needed:
            raise PreconditionError(f"width {d.zeta} is below the required {needed}")
        cores: Dict[int, RootedTreeEmbedding] = {}
        for v, decoration in decorations.items():
            core = prune_uniform(decoration, tt * zeta, heights[v])
            if core is None:
                raise ConstructionError(f"decoration at {v} has no ({tt * zeta},{heights[v]})-uniform core")
            cores[v] = core
        for q in candidates:
            if q in cores[p]:
                continue
            if any(is_t_bad(g, core, tt, q).is_bad for core in cores.values()):
                continue
            kept = {v: shrink(g, core, tt, zeta, q) for v, core in cores.items()}
            kept[q] = prune_uniform(decorations[p].hanging_subtree(q), zeta, heights[p] - 1)
            if kept[q] is None:
                raise ConstructionError(f"subtree below {q} lost its uniform core")
            break
        else:
            raise ConstructionError("precondition arithmetic violated: no eligible child")
    else:
        for q in candidates:
            blocked = g.neighbours(q) | 1 << q
            kept = {}
            for v, decoration in decorations.items():
                pruned = prune_uniform(decoration, zeta, heights[v], blocked)
                if pruned is None:
                    break
                kept[v] = pruned
            else:
                pruned = prune_uniform(decorations[p].hanging_subtree(q), zeta, heights[p] - 1)
                if pruned is not None:
                    kept[q] = pruned
                    break
        else:
            raise GrowthStalled(f"no child of {p} keeps every decoration at width {zeta}")

    grown = _assemble(d, p, q, kept, zeta)
    check = validate_decorated(g, grown)
    if not check:
        raise ConstructionError(f"grown tree is not decorated: {check.message}")
    logger.debug("skeleton grew to %d vertices with q=%d (width %d)", grown.skeleton.size, q, zeta)
    return grown


# ================= WHOLE TARGET =================

def _explain_stall(g: Graph, tt: int, budget: SearchBudget, stage: int, message: str) -> GrowthOutcome:
    witness = find_biclique(g, tt, tt, budget)
    if witness is not None:
        return GrowthOutcome("biclique", stage=stage, witness=witness, message=message)
    logger.warning("growth stalled at stage %d: %s", stage, message)
    return GrowthOutcome("stalled", stage=stage, message=message)


def grow_to_target(
    g: Graph,
    h: AbstractTree,
    tt: int,
    budget: Optional[SearchBudget] = None,
    strict: bool = False,
    zeta: Optional[int] = None,
    start_widths: Optional[Iterable[int]] = None,
) -> GrowthOutcome:
    """
    Grow an induced copy of the rooted tree ``h`` one leaf at a time.

    The target vertices are added in BFS order from the root of ``h``. In
    strict mode the widths follow :func:`zeta_schedule` ending at ``zeta``
    (default 2) and the host is first searched for ``K_{tt,tt}``. In
    permissive mode the starting width is the largest of ``start_widths``
    (default ``|h|`` down to 1) that admits a path-induced uniform tree, and
    each step keeps the largest width that still grows.

    :param g: Host graph
    :type g: Graph
    :param h: Rooted target tree
    :type h: AbstractTree
    :param tt: Biclique parameter
    :type tt: int
    :param budget: Node budget shared by every search of the run
    :type budget: Optional[SearchBudget]
    :param strict: Run every step in strict mode
    :type strict: bool
    :param zeta: Final width in strict mode
    :type zeta: Optional[int]
    :param start_widths: Starting widths to try in permissive mode
    :type start_widths: Optional[Iterable[int]]
    :rtype: GrowthOutcome
    """
    budget = ensure_budget(budget)
    eta = max(h.height, 1)
    k = h.vertex_count
    order = h.bfs_order()
    if k == 1 and g.vertex_count > 0:
        return GrowthOutcome("embedded", embedding=InducedEmbedding(h, (0,)), stage=1)
    try:
        if strict:
            widths: List[int] = zeta_schedule(k, zeta or 2, eta, tt)
            witness = find_biclique(g, tt, tt, budget)
            if witness is not None:
                return GrowthOutcome("biclique", witness=witness, message=f"host contains K_{tt},{tt}")
            scaffold = find_path_induced_uniform(g, widths[0], eta, budget=budget)
            start = widths[0]
        else:
            scaffold, start = None, 0
            for width in sorted(set(start_widths or range(1, k + 1)), reverse=True):
                scaffold = find_path_induced_uniform(g, width, eta, budget=budget)
                if scaffold is not None:
                    start = width
                    break
        if scaffold is None:
            return GrowthOutcome("no_uniform_tree", message=f"no path-induced uniform tree of height {eta}")
        logger.info("growth starts from root %d with width %d", scaffold.root, start)

        d = single_vertex_decorated(scaffold, start, eta)
        image = {order[0]: scaffold.root}
        for i, x in enumerate(order[1:], start=1):
            p = image[h.parent[x]]
            before = d.skeleton.members
            if strict:
                d = grow_step(g, d, p, widths[i], tt, strict=True)
            else:
                for width in range(d.zeta, 0, -1):
                    try:
                        d = grow_step(g, d, p, width, tt, strict=False)
                        break
                    except GrowthStalled:
                        continue
                else:
                    return _explain_stall(g, tt, budget, i, f"no child of {p} can be added")
            (q,) = d.skeleton.members - before
            image[x] = q
            logger.info("placed target vertex %d on host vertex %d (stage %d/%d)", x, q, i + 1, k)
    except BudgetExhausted as exc:
        logger.warning("growth stopped: %s", exc)
        return GrowthOutcome("budget", message=str(exc))

    embedding = InducedEmbedding.from_mapping(h, image)
    if not validate_embedding(g, embedding):
        raise ConstructionError("grown skeleton is not an induced copy of the target")
    return GrowthOutcome("embedded", embedding=embedding, decorated=d, stage=k)
