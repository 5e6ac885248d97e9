# long_holes/longhole_audit.py

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Tuple

from graph_core.degeneracy_service import degeneracy
from graph_core.graph import Graph, mask_of
from long_holes.fixpoint_service import FixpointResult
from long_holes.infusion_service import bad_for_infusion
from uniform_forest.edge_partition import EDGE_CLASSES

logger = logging.getLogger(__name__)


def longhole_bound(t: int, eta: int) -> int:
    """``t ** (7 * eta**eta)``, the degeneracy bound without long holes or ``K_{t,t}``."""
    return t ** (7 * eta ** eta)


@dataclass
class LongholeAuditReport:
    """
    A/B/C/D classification of every edge around the fixpoint classes.

    ``x0_degeneracy`` is the degeneracy of the subgraph on the vertices that
    root no infusion, the quantity that bounds class A.
    """

    t: int
    eta: int
    classes: Dict[Tuple[int, int], str]
    heads: Dict[Tuple[int, int], int]
    bounds: Dict[str, int]
    x0_degeneracy: int
    max_b_per_tail: int
    max_c_per_head: int
    max_d_per_head: int
    stable: bool = False

    @property
    def sizes(self) -> Dict[str, int]:
        counts = Counter(self.classes.values())
        return {name: counts.get(name, 0) for name in EDGE_CLASSES}

    def within_bounds(self) -> bool:
        sizes = self.sizes
        return all(sizes[name] <= self.bounds[name] for name in EDGE_CLASSES)


def longhole_edge_audit(g: Graph, result: FixpointResult) -> LongholeAuditReport:
    """
    Recount the edge partition behind the long-hole degeneracy bound.

    An edge touching some class ``X_i``, ``i >= 1``, is headed at its end in
    the highest class, the smaller id on ties. With head ``v``, its kept
    infusion ``phi_v`` and other end ``u``: D if ``u`` is an image of
    ``phi_v``, C if ``u`` is bad for it, B otherwise. Edges inside ``X_0``
    are A.

    :param g: Host graph the fixpoint was computed on
    :type g: Graph
    :param result: Fixpoint output
    :type result: FixpointResult
    :rtype: LongholeAuditReport
    """
    t, eta = result.t, result.eta
    level = {v: result.class_of(v) for v in g.vertices()}
    classes: Dict[Tuple[int, int], str] = {}
    heads: Dict[Tuple[int, int], int] = {}
    b_per_tail: Counter = Counter()
    c_per_head: Counter = Counter()
    d_per_head: Counter = Counter()
    for u, v in g.edges():
        if level[u] == 0 and level[v] == 0:
            classes[(u, v)] = "A"
            continue
        head, tail = (v, u) if level[v] > level[u] else (u, v)
        heads[(u, v)] = head
        infusion = result.representative(head)
        if tail in infusion.images:
            classes[(u, v)] = "D"
            d_per_head[head] += 1
        elif bad_for_infusion(g, infusion, tail).is_bad:
            classes[(u, v)] = "C"
            c_per_head[head] += 1
        else:
            classes[(u, v)] = "B"
            b_per_tail[tail] += 1

    n = g.vertex_count
    zeta = t ** eta
    bounds = {
        "A": (zeta * t) ** math.factorial(eta + 1) * n,
        "B": t ** eta * n,
        "C": t ** (eta ** eta) * n,
        "D": t ** eta * n,
    }
    x0 = mask_of(v for v, k in level.items() if k == 0)
    report = LongholeAuditReport(
        t=t,
        eta=eta,
        classes=classes,
        heads=heads,
        bounds=bounds,
        x0_degeneracy=degeneracy(g, within=x0).bound if x0 else 0,
        max_b_per_tail=max(b_per_tail.values(), default=0),
        max_c_per_head=max(c_per_head.values(), default=0),
        max_d_per_head=max(d_per_head.values(), default=0),
        stable=result.stable,
    )
    if not report.within_bounds():
        logger.warning("long-hole edge partition exceeds a class bound: %s vs %s", report.sizes, bounds)
    return report
