# uniform_forest/edge_partition.py

from __future__ import annotations

import logging
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Optional, Tuple

from graph_core.errors import BudgetExhausted, PreconditionError
from graph_core.graph import Graph
from graph_core.rooted_tree import RootedTreeEmbedding
from uniform_forest.badness_service import is_t_bad
from uniform_forest.path_induced_search import find_path_induced_uniform
from witness_search.budget import SearchBudget

logger = logging.getLogger(__name__)

EDGE_CLASSES = ("A", "B", "C", "D")


@dataclass
class EdgePartitionReport:
    """
    Classification of every edge into A/B/C/D around a fixed choice of limbs.

    ``classes`` maps each edge ``(u, v)``, ``u < v``, to its class. The
    ``bounds`` are the counting bounds each class is compared against.
    ``partial`` is set when a limb search ran out of budget; those roots are
    listed in ``unresolved`` and treated as limb-free.
    """

    zeta: int
    eta: int
    tt: int
    zeta_prime: int
    limb_roots: FrozenSet[int]
    limbs: Dict[int, RootedTreeEmbedding]
    classes: Dict[Tuple[int, int], str]
    heads: Dict[Tuple[int, int], int]
    bounds: Dict[str, int]
    max_b_per_tail: int
    max_d_per_head: int
    partial: bool = False
    unresolved: FrozenSet[int] = field(default_factory=frozenset)

    @property
    def sizes(self) -> Dict[str, int]:
        counts = Counter(self.classes.values())
        return {name: counts.get(name, 0) for name in EDGE_CLASSES}

    def within_bounds(self) -> bool:
        sizes = self.sizes
        return all(sizes[name] <= self.bounds[name] for name in EDGE_CLASSES)


def edge_partition_audit(
    g: Graph,
    zeta: int,
    eta: int,
    tt: int,
    budget_nodes: Optional[int] = None,
    workers: int = 1,
) -> EdgePartitionReport:
    """
    Recount the A/B/C/D edge partition behind the vertical degeneracy bound.

    A limb is a path-induced ``(zeta', eta-1)``-uniform tree with
    ``zeta' = tt * zeta**(eta+1)``. ``P`` is the set of limb roots and each
    edge touching ``P`` is headed at its end in ``P`` with the smaller id.
    With head ``v`` and other end ``u``: D if ``u`` is in the limb of ``v``,
    C if ``u`` is ``tt``-bad for it, B otherwise. Edges inside the rest of
    the graph are A.

    :param g: Host graph
    :type g: Graph
    :param zeta: Spread parameter, at least 2
    :type zeta: int
    :param eta: Height parameter, at least 1
    :type eta: int
    :param tt: Biclique parameter, at least 1
    :type tt: int
    :param budget_nodes: Node budget for each per-root limb search
    :type budget_nodes: Optional[int]
    :param workers: Threads for the per-root limb searches
    :type workers: int
    :rtype: EdgePartitionReport
    """
    if zeta < 2 or eta < 1 or tt < 1:
        raise PreconditionError("edge partition audit needs zeta >= 2, eta >= 1 and tt >= 1")
    zeta_prime = tt * zeta ** (eta + 1)

    def limb_at(v: int) -> Tuple[int, Optional[RootedTreeEmbedding], bool]:
        try:
            limb = find_path_induced_uniform(g, zeta_prime, eta - 1, root=v, budget=SearchBudget(budget_nodes))
            return v, limb, False
        except BudgetExhausted:
            return v, None, True

    with ThreadPoolExecutor(max_workers=max(workers, 1)) as pool:
        results = list(pool.map(limb_at, g.vertices()))

    limbs = {v: limb for v, limb, _ in results if limb is not None}
    unresolved = frozenset(v for v, _, exhausted in results if exhausted)
    if unresolved:
        logger.warning("limb search exhausted its budget at %d roots", len(unresolved))

    classes: Dict[Tuple[int, int], str] = {}
    heads: Dict[Tuple[int, int], int] = {}
    b_per_tail: Counter = Counter()
    d_per_head: Counter = Counter()
    for u, v in g.edges():
        if u in limbs:
            head, tail = u, v
        elif v in limbs:
            head, tail = v, u
        else:
            classes[(u, v)] = "A"
            continue
        limb = limbs[head]
        heads[(u, v)] = head
        if tail in limb:
            classes[(u, v)] = "D"
            d_per_head[head] += 1
        elif is_t_bad(g, limb, tt, tail).is_bad:
            classes[(u, v)] = "C"
        else:
            classes[(u, v)] = "B"
            b_per_tail[tail] += 1

    n = g.vertex_count
    p = len(limbs)
    bounds = {
        "A": (zeta_prime * tt) ** math.factorial(eta) * (n - p),
        "B": (zeta - 1) * n,
        "C": zeta_prime ** (eta - 1) * (tt - 1) * p,
        "D": zeta_prime * p,
    }
    report = EdgePartitionReport(
        zeta=zeta,
        eta=eta,
        tt=tt,
        zeta_prime=zeta_prime,
        limb_roots=frozenset(limbs),
        limbs=limbs,
        classes=classes,
        heads=heads,
        bounds=bounds,
        max_b_per_tail=max(b_per_tail.values(), default=0),
        max_d_per_head=max(d_per_head.values(), default=0),
        partial=bool(unresolved),
        unresolved=unresolved,
    )
    if not report.within_bounds():
        logger.warning("edge partition exceeds a class bound: %s vs %s", report.sizes, bounds)
    return report
