# graph_core/degeneracy_service.py

from __future__ import annotations

import heapq
import logging
from typing import Dict, List, Optional, Tuple

from graph_core.certificates import DegeneracyCertificate
from graph_core.errors import CertificateError
from graph_core.graph import Graph, iter_bits, mask_of

logger = logging.getLogger(__name__)


def degeneracy(g: Graph, within: Optional[int] = None) -> DegeneracyCertificate:
    """
    Compute the degeneracy of ``g`` with a peeling certificate.

    Bucket-queue peeling: repeatedly remove a vertex of minimum remaining
    degree, smallest id first. Each bucket is a heap with lazy deletion so the
    smallest id of the minimum bucket is found without scanning.

    :param g: Host graph
    :type g: Graph
    :param within: Optional vertex mask; peel only the induced subgraph on it
    :type within: Optional[int]
    :return: Certificate whose bound equals the exact degeneracy
    :rtype: DegeneracyCertificate
    """
    alive = g.vertex_mask if within is None else within
    vertices = list(iter_bits(alive))
    if not vertices:
        return DegeneracyCertificate((), 0)

    degree: Dict[int, int] = {v: g.degree(v, alive) for v in vertices}
    max_deg = max(degree.values())
    buckets: List[List[int]] = [[] for _ in range(max_deg + 1)]
    for v in vertices:
        buckets[degree[v]].append(v)
    for bucket in buckets:
        heapq.heapify(bucket)

    ordering: List[int] = []
    bound = 0
    current = 0
    while len(ordering) < len(vertices):
        current = max(current - 1, 0)
        while True:
            bucket = buckets[current]
            while bucket and (not alive >> bucket[0] & 1 or degree[bucket[0]] != current):
                heapq.heappop(bucket)
            if bucket:
                break
            current += 1
        v = heapq.heappop(buckets[current])
        alive &= ~(1 << v)
        ordering.append(v)
        bound = max(bound, current)
        for u in iter_bits(g.neighbours(v) & alive):
            degree[u] -= 1
            heapq.heappush(buckets[degree[u]], u)

    logger.debug("degeneracy %d over %d vertices", bound, len(ordering))
    return DegeneracyCertificate(tuple(ordering), bound)


def certificate_violation(g: Graph, cert: DegeneracyCertificate) -> Optional[int]:
    """
    First position at which ``cert`` fails for ``g``, or ``None`` if it holds.

    A certificate must list every vertex exactly once; a repeated or foreign
    vertex is reported at its position, a missing vertex at ``len(ordering)``.

    :param g: Host graph
    :type g: Graph
    :param cert: Certificate to check
    :type cert: DegeneracyCertificate
    :rtype: Optional[int]
    """
    later = g.vertex_mask
    seen = 0
    for i, v in enumerate(cert.ordering):
        if not 0 <= v < g.vertex_count or seen >> v & 1:
            return i
        seen |= 1 << v
    if seen != g.vertex_mask:
        return len(cert.ordering)
    for i, v in enumerate(cert.ordering):
        later &= ~(1 << v)
        if g.degree(v, later) > cert.bound:
            return i
    return None


def greedy_color(g: Graph, cert: DegeneracyCertificate) -> Dict[int, int]:
    """
    Colour ``g`` greedily along the reverse of a peeling order.

    Every vertex has at most ``cert.bound`` neighbours coloured before it, so
    at most ``cert.bound + 1`` colours are used.

    :param g: Host graph
    :type g: Graph
    :param cert: Valid degeneracy certificate for ``g``
    :type cert: DegeneracyCertificate
    :return: Map vertex -> colour id (0-based)
    :rtype: Dict[int, int]
    :raises CertificateError: If the certificate is violated
    """
    position = certificate_violation(g, cert)
    if position is not None:
        raise CertificateError(position)
    coloring: Dict[int, int] = {}
    for v in reversed(cert.ordering):
        used = {coloring[u] for u in iter_bits(g.neighbours(v)) if u in coloring}
        color = 0
        while color in used:
            color += 1
        coloring[v] = color
    return coloring


def is_proper_coloring(g: Graph, coloring: Dict[int, int]) -> bool:
    if set(coloring) != set(g.vertices()):
        return False
    return all(coloring[u] != coloring[v] for u, v in g.edges())


def color_count(coloring: Dict[int, int]) -> int:
    return len(set(coloring.values()))


def peel_below(g: Graph, threshold: int, within: Optional[int] = None) -> Tuple[List[int], int]:
    """
    Repeatedly delete vertices of degree below ``threshold``.

    :param g: Host graph
    :type g: Graph
    :param threshold: Minimum degree of the surviving core
    :type threshold: int
    :param within: Optional vertex mask to peel inside
    :type within: Optional[int]
    :return: Deleted vertices in deletion order and the mask of the core,
        in which every vertex has at least ``threshold`` neighbours
    :rtype: Tuple[List[int], int]
    """
    alive = g.vertex_mask if within is None else within
    peeled: List[int] = []
    stack = [v for v in iter_bits(alive) if g.degree(v, alive) < threshold]
    queued = mask_of(stack)
    while stack:
        v = stack.pop()
        alive &= ~(1 << v)
        peeled.append(v)
        for u in iter_bits(g.neighbours(v) & alive & ~queued):
            if g.degree(u, alive) < threshold:
                queued |= 1 << u
                stack.append(u)
    return peeled, alive
