# long_holes/fixpoint_service.py

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from graph_core.errors import BudgetExhausted, ChainTooShort, ConstructionError, PreconditionError
from graph_core.graph import Graph
from graph_core.validators import is_induced_cycle
from long_holes.derivation_service import Derivation, derive_with_sources
from long_holes.infusion_service import Column, Infusion, bad_for_infusion, columns, find_infusion, is_shift
from witness_search.budget import SearchBudget

logger = logging.getLogger(__name__)

ChainLink = Tuple[Infusion, Column]


@dataclass
class FixpointResult:
    """
    Nested root layers of the derivability fixpoint.

    ``layers[0]`` holds every root of a ``(t, eta)``-infusion and
    ``layers[i]`` the roots of infusions derived from ``t**eta``
    representatives of ``layers[i-1]``. ``representatives[i][v]`` is the
    infusion kept for ``v`` at layer ``i`` and, for ``i >= 1``,
    ``derivations[i][v]`` records how it was built. ``stable`` is set when
    the last two layers hold the same roots; their representatives may
    still differ.
    """

    t: int
    eta: int
    vertex_count: int
    layers: List[FrozenSet[int]]
    representatives: List[Dict[int, Infusion]]
    derivations: List[Dict[int, Derivation]]
    stable: bool = False
    unresolved: FrozenSet[int] = field(default_factory=frozenset)

    def class_of(self, v: int) -> int:
        """Index ``i`` of the class ``X_i`` holding ``v``; 0 when ``v`` roots no infusion."""
        return sum(1 for layer in self.layers if v in layer)

    def classes(self) -> List[FrozenSet[int]]:
        """``X_0 .. X_k`` as a partition of the vertex set."""
        parts: List[set] = [set() for _ in range(len(self.layers) + 1)]
        for v in range(self.vertex_count):
            parts[self.class_of(v)].add(v)
        return [frozenset(p) for p in parts]

    def representative(self, v: int) -> Optional[Infusion]:
        """The infusion kept for ``v`` at its highest layer."""
        k = self.class_of(v)
        return self.representatives[k - 1][v] if k else None


def _derive_at(g: Graph, v: int, previous: Dict[int, Infusion], need: int) -> Optional[Derivation]:
    parts = []
    for w in g.neighbour_list(v):
        part = previous.get(w)
        if part is None or v in part.images or bad_for_infusion(g, part, v).is_bad:
            continue
        parts.append(part)
        if len(parts) == need:
            return derive_with_sources(g, v, parts)
    return None


def derivability_fixpoint(
    g: Graph,
    t: int,
    eta: int,
    budget_nodes: Optional[int] = None,
    extra_layers: int = 0,
    workers: int = 1,
) -> FixpointResult:
    """
    Compute the nested layers of roots admitting derived infusions.

    A vertex stays in the next layer when ``t**eta`` of its neighbours have
    representatives in the current layer that avoid it and for which it is
    not bad; its new representative is derived from the first such
    neighbours in ascending id. Each layer is intersected with the previous
    one. Iteration stops at an empty layer or, ``extra_layers`` repetitions
    after the first, at a repeated layer. Repetition compares root sets
    only, not the representatives kept for them.

    :param g: Host graph
    :type g: Graph
    :param t: Taper base, at least 1
    :type t: int
    :param eta: Height, at least 1
    :type eta: int
    :param budget_nodes: Node budget for each per-root infusion search
    :type budget_nodes: Optional[int]
    :param extra_layers: Further layers to derive once the layers repeat
    :type extra_layers: int
    :param workers: Threads for the per-root searches of the first layer
    :type workers: int
    :rtype: FixpointResult
    """
    if t < 1 or eta < 1 or extra_layers < 0:
        raise PreconditionError("fixpoint needs t >= 1, eta >= 1 and extra_layers >= 0")

    def infusion_at(v: int) -> Tuple[int, Optional[Infusion], bool]:
        try:
            return v, find_infusion(g, t, eta, root=v, budget=SearchBudget(budget_nodes)), False
        except BudgetExhausted:
            return v, None, True

    with ThreadPoolExecutor(max_workers=max(workers, 1)) as pool:
        results = list(pool.map(infusion_at, g.vertices()))
    unresolved = frozenset(v for v, _, exhausted in results if exhausted)
    if unresolved:
        logger.warning("infusion search exhausted its budget at %d roots", len(unresolved))

    first = {v: inf for v, inf, _ in results if inf is not None}
    result = FixpointResult(t, eta, g.vertex_count, [], [], [], unresolved=unresolved)
    if not first:
        return result
    result.layers.append(frozenset(first))
    result.representatives.append(first)
    result.derivations.append({})
    logger.info("layer 1 holds %d roots", len(first))

    need = t ** eta
    extras = extra_layers
    while True:
        previous = result.representatives[-1]
        derived: Dict[int, Derivation] = {}
        for v in sorted(result.layers[-1]):
            found = _derive_at(g, v, previous, need)
            if found is not None:
                derived[v] = found
        layer = frozenset(derived) & result.layers[-1]
        if not layer:
            break
        repeated = layer == result.layers[-1]
        result.layers.append(layer)
        result.representatives.append({v: d.result for v, d in derived.items()})
        result.derivations.append(derived)
        logger.info("layer %d holds %d roots", len(result.layers), len(layer))
        if repeated:
            if extras == 0:
                result.stable = True
                break
            extras -= 1
    return result


def shift_chain(result: FixpointResult, root: int, leaf: Optional[int] = None) -> List[ChainLink]:
    """
    Follow stored derivations down from ``root``'s highest layer.

    Each link's column, minus its root, is a prefix of the next link's
    column, so the chain has one link per layer holding ``root``.

    :param result: Fixpoint output
    :type result: FixpointResult
    :param root: Vertex in at least one layer
    :type root: int
    :param leaf: Leaf of the first column, default the first leaf
    :type leaf: Optional[int]
    :rtype: List[ChainLink]
    :raises PreconditionError: If ``root`` is in no layer
    """
    k = result.class_of(root)
    if k == 0:
        raise PreconditionError(f"vertex {root} roots no infusion")
    v = root
    current = result.representatives[k - 1][v]
    x = leaf if leaf is not None else current.tree.leaves()[0]
    chain = [(current, tuple(current.phi[y] for y in current.tree.path_to_root(x)))]
    for layer in range(k - 1, 0, -1):
        derivation = result.derivations[layer][v]
        index, x, column = derivation.shifted_column(x)
        current = derivation.parts[index]
        v = current.root_image
        chain.append((current, column))
    return chain


def extract_long_cycle(g: Graph, eta: int, chain: Sequence[ChainLink]) -> List[int]:
    """
    Read an induced cycle longer than ``eta`` off a chain of shifts.

    The link roots followed by the tail of the last column form a walk in
    which every ``eta + 1`` consecutive vertices induce a path. The first
    walk vertex adjacent to a vertex at least two steps back closes the
    cycle through the latest such vertex.

    :param g: Host graph
    :type g: Graph
    :param eta: Column length, at least 2
    :type eta: int
    :param chain: Links, each followed by a shift of it
    :type chain: Sequence[ChainLink]
    :return: Vertices of the cycle in order
    :rtype: List[int]
    :raises PreconditionError: If ``eta < 2`` or a link is not followed by its shift
    :raises ChainTooShort: If the walk closes no cycle
    """
    if eta < 2:
        raise PreconditionError("cycle extraction needs eta >= 2")
    if not chain:
        raise ChainTooShort("empty chain")
    for a, b in zip(chain, chain[1:]):
        if not is_shift(a, b) or tuple(a[1][1:]) != tuple(b[1][:len(a[1]) - 1]):
            raise PreconditionError(f"link rooted at {b[0].root_image} is not an anchored shift of its predecessor")
    walk = [link[1][0] for link in chain] + list(chain[-1][1][1:])
    for j in range(len(walk)):
        for i in range(j - 2, -1, -1):
            if g.has_edge(walk[i], walk[j]):
                cycle = walk[i:j + 1]
                if len(cycle) <= eta or not is_induced_cycle(g, cycle):
                    raise ConstructionError(f"walk closed a cycle {cycle} that is not an induced cycle longer than {eta}")
                logger.info("extracted an induced cycle of length %d", len(cycle))
                return cycle
    raise ChainTooShort(f"walk of {len(walk)} vertices closes no cycle")
