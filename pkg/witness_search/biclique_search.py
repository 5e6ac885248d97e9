# witness_search/biclique_search.py

from __future__ import annotations

import logging
from typing import List, Optional, Tuple

from graph_core.certificates import BicliqueWitness
from graph_core.errors import BudgetExhausted, PreconditionError
from graph_core.graph import Graph, iter_bits, lowest_bits
from witness_search.budget import SearchBudget, ensure_budget

logger = logging.getLogger(__name__)


def find_biclique(
    g: Graph,
    s: int,
    t: int,
    budget: Optional[SearchBudget] = None,
    within: Optional[int] = None,
) -> Optional[BicliqueWitness]:
    """
    Find a ``K_{s,t}`` subgraph (not necessarily induced).

    Backtracks over the smaller side in ascending vertex order, keeping the
    common neighbourhood of the chosen vertices as a bitset and pruning as
    soon as it holds fewer vertices than the larger side needs. When
    ``s == t`` the side with the smaller minimum is the one enumerated, which
    halves the search.

    :param g: Host graph
    :type g: Graph
    :param s: Size of ``side_a`` of the witness
    :type s: int
    :param t: Size of ``side_b`` of the witness
    :type t: int
    :param budget: Optional node budget
    :type budget: Optional[SearchBudget]
    :param within: Optional vertex mask to search in
    :type within: Optional[int]
    :return: A witness, or ``None`` when no ``K_{s,t}`` exists
    :rtype: Optional[BicliqueWitness]
    :raises PreconditionError: If ``s`` or ``t`` is below 1
    :raises BudgetExhausted: If the budget runs out
    """
    if s < 1 or t < 1:
        raise PreconditionError("biclique sides must have at least one vertex")
    budget = ensure_budget(budget)
    small, large = min(s, t), max(s, t)
    universe = g.vertex_mask if within is None else within
    symmetric = s == t

    # A vertex of the enumerated side needs at least ``large`` neighbours.
    eligible = [v for v in iter_bits(universe) if g.degree(v, universe) >= large]
    chosen: List[int] = []

    def extend(start: int, common: int) -> Optional[List[int]]:
        budget.spend()
        if len(chosen) == small:
            pool = common
            if symmetric:
                pool &= ~((2 << chosen[0]) - 1)
            if pool.bit_count() >= large:
                return lowest_bits(pool, large)
            return None
        for i in range(start, len(eligible)):
            if len(eligible) - i < small - len(chosen):
                break
            v = eligible[i]
            narrowed = common & g.neighbours(v)
            if narrowed.bit_count() < large:
                continue
            chosen.append(v)
            found = extend(i + 1, narrowed)
            if found is not None:
                return found
            chosen.pop()
        return None

    other = extend(0, universe)
    if other is None:
        logger.debug("no K_%d,%d after %d nodes", s, t, budget.spent)
        return None
    enumerated = frozenset(chosen)
    if s <= t:
        return BicliqueWitness(enumerated, frozenset(other))
    return BicliqueWitness(frozenset(other), enumerated)


def tau(g: Graph, budget: Optional[SearchBudget] = None) -> int:
    """
    Largest ``t`` such that ``g`` contains ``K_{t,t}`` as a subgraph.

    :param g: Host graph
    :type g: Graph
    :param budget: Optional node budget shared by all probes
    :type budget: Optional[SearchBudget]
    :return: ``tau(g)``, 0 for an edgeless graph
    :rtype: int
    :raises BudgetExhausted: If the budget runs out
    """
    budget = ensure_budget(budget)
    best = 0
    while 2 * (best + 1) <= g.vertex_count:
        if find_biclique(g, best + 1, best + 1, budget) is None:
            break
        best += 1
    return best


def tau_lower_bound(g: Graph, budget: Optional[SearchBudget] = None) -> Tuple[int, bool]:
    """
    :func:`tau` that keeps its progress when the budget runs out.

    :return: The largest ``t`` confirmed and whether it is exact
    :rtype: Tuple[int, bool]
    """
    budget = ensure_budget(budget)
    best = 0
    try:
        while 2 * (best + 1) <= g.vertex_count:
            if find_biclique(g, best + 1, best + 1, budget) is None:
                break
            best += 1
    except BudgetExhausted:
        return best, False
    return best, True
