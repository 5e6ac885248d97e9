# long_holes/infusion_service.py

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from graph_core.errors import PreconditionError
from graph_core.graph import Graph, iter_bits, mask_of
from long_holes.tapering_tree import TaperingTree, tapering_tree
from uniform_forest.badness_service import BadnessReport, BadVertexAudit
from witness_search.biclique_search import find_biclique
from witness_search.budget import SearchBudget, ensure_budget

logger = logging.getLogger(__name__)

Column = Tuple[int, ...]


@dataclass(frozen=True)
class Infusion:
    """
    Map ``phi`` from the vertices of a tapering tree into the host.

    ``phi`` need not be injective: only vertices on a common root path, and
    siblings, must have distinct images.
    """

    tree: TaperingTree
    phi: Tuple[int, ...]

    @property
    def root_image(self) -> int:
        return self.phi[0]

    @property
    def images(self) -> FrozenSet[int]:
        return frozenset(self.phi)

    @property
    def image_mask(self) -> int:
        return mask_of(self.phi)

    def to_dict(self) -> dict:
        return {"t": self.tree.t, "eta": self.tree.eta, "phi": list(self.phi)}

    @classmethod
    def from_dict(cls, data: dict) -> "Infusion":
        return cls(tapering_tree(int(data["t"]), int(data["eta"])), tuple(int(x) for x in data["phi"]))


@dataclass(frozen=True)
class InfusionReport:
    """
    ``failed`` lists every violated condition, numbered 1 to 4: edges map to
    host edges, siblings have distinct images, root paths have distinct
    images, root paths are induced.
    """

    valid: bool
    failed: Tuple[int, ...] = ()
    message: str = ""

    def __bool__(self) -> bool:
        return self.valid


# ================= CHECKS =================

def validate_infusion(g: Graph, inf: Infusion) -> InfusionReport:
    """
    Check the four infusion conditions separately.

    :param g: Host graph
    :type g: Graph
    :param inf: Candidate infusion
    :type inf: Infusion
    :return: Report listing every violated condition
    :rtype: InfusionReport
    """
    tree, phi = inf.tree, inf.phi
    if len(phi) != tree.size or any(not 0 <= x < g.vertex_count for x in phi):
        return InfusionReport(False, (1,), "image does not cover the tree inside the host")
    failed: List[int] = []
    messages: List[str] = []

    for p, c in tree.edges():
        if phi[p] == phi[c] or not g.has_edge(phi[p], phi[c]):
            failed.append(1)
            messages.append(f"tree edge {p}-{c} is not a host edge")
            break

    for v in tree.internal_vertices():
        kids = [phi[c] for c in tree.children[v]]
        if len(set(kids)) != len(kids):
            failed.append(2)
            messages.append(f"children of {v} share an image")
            break

    collision = chord = None
    stack = [(0, [0])]
    while stack and (collision is None or chord is None):
        v, path = stack.pop()
        x = phi[v]
        for depth, a in enumerate(path[:-1]):
            if collision is None and phi[a] == x:
                collision = (a, v)
            if phi[a] != x:
                adjacent = g.has_edge(phi[a], x)
                if chord is None and adjacent != (depth == len(path) - 2):
                    chord = (a, v)
        for c in tree.children[v]:
            stack.append((c, path + [c]))
    if collision is not None:
        failed.append(3)
        messages.append(f"vertices {collision[0]} and {collision[1]} on a root path share an image")
    if chord is not None:
        failed.append(4)
        messages.append(f"root path through {chord[0]} and {chord[1]} is not induced")
    if failed:
        return InfusionReport(False, tuple(failed), "; ".join(messages))
    return InfusionReport(True)


def columns(inf: Infusion) -> List[Column]:
    """Images of the root-to-leaf paths, one per leaf in ascending order."""
    return [tuple(inf.phi[v] for v in inf.tree.path_to_root(leaf)) for leaf in inf.tree.leaves()]


def _is_subpath(part: Sequence[int], whole: Sequence[int]) -> bool:
    k = len(part)
    part = tuple(part)
    for candidate in (tuple(whole), tuple(reversed(whole))):
        if any(candidate[i:i + k] == part for i in range(len(candidate) - k + 1)):
            return True
    return False


def is_shift(a: Tuple[Infusion, Column], b: Tuple[Infusion, Column]) -> bool:
    """
    True iff ``b`` is a shift of ``a``: both columns belong to their
    infusions and ``a``'s column without its root is a contiguous subpath of
    ``b``'s column.
    """
    (phi_a, q_a), (phi_b, q_b) = a, b
    if tuple(q_a) not in columns(phi_a) or tuple(q_b) not in columns(phi_b):
        return False
    return _is_subpath(q_a[1:], q_b)


# ================= BADNESS =================

def _threshold(tree: TaperingTree, v: int) -> int:
    return (tree.t - 1) * tree.t ** (tree.eta - tree.depth[v] - 1)


def bad_for_infusion(g: Graph, inf: Infusion, u: int) -> BadnessReport:
    """
    Test whether ``u`` is adjacent to more than ``(t-1) * t**(eta-h-1)``
    images of children of some tree vertex at depth ``h``.

    :param g: Host graph
    :type g: Graph
    :param inf: Infusion
    :type inf: Infusion
    :param u: Host vertex; images equal to ``u`` are not counted
    :type u: int
    :return: Report naming the first witnessing tree vertex in BFS order
    :rtype: BadnessReport
    """
    tree = inf.tree
    nbrs = g.neighbours(u) & ~(1 << u)
    threshold = 0
    for v in tree.internal_vertices():
        threshold = _threshold(tree, v)
        count = sum(1 for c in tree.children[v] if nbrs >> inf.phi[c] & 1)
        if count > threshold:
            return BadnessReport(u, v, Fraction(threshold), count)
    return BadnessReport(u, None, Fraction(threshold))


def infusion_bad_set(
    g: Graph,
    inf: Infusion,
    check_biclique: bool = False,
    budget: Optional[SearchBudget] = None,
) -> BadVertexAudit:
    """
    Every host vertex bad for ``inf``, audited against ``t ** (eta ** eta)``.

    The bound holds in hosts without ``K_{t,t}``; with ``check_biclique``
    the host is searched and any biclique found is attached.
    """
    tree = inf.tree
    masks = [(mask_of(inf.phi[c] for c in tree.children[v]), _threshold(tree, v)) for v in tree.internal_vertices()]
    bad = set()
    for u in g.vertices():
        nbrs = g.neighbours(u) & ~(1 << u)
        if any((nbrs & kids).bit_count() > limit for kids, limit in masks):
            bad.add(u)
    bound = tree.t ** (tree.eta ** tree.eta)
    within = len(bad) <= bound
    witness = find_biclique(g, tree.t, tree.t, budget) if check_biclique else None
    if not within:
        logger.warning("%d vertices bad for the infusion exceed the bound %d", len(bad), bound)
    return BadVertexAudit(frozenset(bad), bound, within, witness)


# ================= SEARCH =================

def find_infusion(
    g: Graph,
    t: int,
    eta: int,
    root: Optional[int] = None,
    avoid: int = 0,
    budget: Optional[SearchBudget] = None,
) -> Optional[Infusion]:
    """
    Search for a ``(t, eta)``-infusion whose images avoid ``avoid``.

    Only ancestors constrain a vertex's image, so the subtrees below
    distinct children are independent and each host vertex is expanded at
    most once per root path. A vertex at depth ``h`` with image ``x`` takes
    the ``t**(eta-h)`` smallest neighbours of ``x`` that avoid the path above
    it and its neighbourhood and can themselves be completed.

    :param g: Host graph
    :type g: Graph
    :param t: Taper base, at least 1
    :type t: int
    :param eta: Height, at least 1
    :type eta: int
    :param root: Fixed root image, or ``None`` to try every vertex
    :type root: Optional[int]
    :param avoid: Mask of host vertices the images may not use
    :type avoid: int
    :param budget: Optional node budget
    :type budget: Optional[SearchBudget]
    :return: The infusion, or ``None`` if none exists
    :rtype: Optional[Infusion]
    :raises PreconditionError: If ``t`` or ``eta`` is below 1
    :raises BudgetExhausted: If the budget runs out
    """
    if t < 1 or eta < 1:
        raise PreconditionError("infusions need t >= 1 and eta >= 1")
    budget = ensure_budget(budget)
    tree = tapering_tree(t, eta)
    if g.vertex_count < eta + 1:
        return None
    memo: Dict[Tuple[int, int], Optional[Tuple[int, ...]]] = {}

    # (x, path) -> chosen child images, path being the images from the root to x
    def complete(x: int, path: int, above: int) -> Optional[Tuple[int, ...]]:
        key = (x, path)
        if key in memo:
            return memo[key]
        budget.spend()
        depth = path.bit_count() - 1
        if depth == eta:
            memo[key] = ()
            return ()
        need = t ** (eta - depth)
        below = above | g.neighbours(x)
        chosen: List[int] = []
        for c in iter_bits(g.neighbours(x) & ~path & ~above & ~avoid):
            if complete(c, path | 1 << c, below) is not None:
                chosen.append(c)
                if len(chosen) == need:
                    break
        result = tuple(chosen) if len(chosen) == need else None
        memo[key] = result
        return result

    roots = [root] if root is not None else list(g.vertices())
    for r in roots:
        if avoid >> r & 1:
            continue
        if complete(r, 1 << r, 0) is None:
            continue
        phi = [0] * tree.size
        phi[0] = r
        paths = {0: 1 << r}
        for v in range(tree.size):
            if tree.depth[v] == eta:
                continue
            kids = memo[(phi[v], paths[v])]
            for c, x in zip(tree.children[v], kids):
                phi[c] = x
                paths[c] = paths[v] | 1 << x
        logger.debug("(%d,%d)-infusion at %d after %d nodes", t, eta, r, budget.spent)
        return Infusion(tree, tuple(phi))
    return None
