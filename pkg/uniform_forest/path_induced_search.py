# uniform_forest/path_induced_search.py

from __future__ import annotations

import logging
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from graph_core.errors import PreconditionError
from graph_core.graph import Graph, iter_bits
from graph_core.rooted_tree import RootedTreeEmbedding, uniform_size
from witness_search.budget import SearchBudget, ensure_budget

logger = logging.getLogger(__name__)


def find_path_induced_uniform(
    g: Graph,
    zeta: int,
    eta: int,
    root: Optional[int] = None,
    budget: Optional[SearchBudget] = None,
    avoid: int = 0,
) -> Optional[RootedTreeEmbedding]:
    """
    Search for a ``(zeta, eta)``-uniform tree whose root paths are all induced.

    The open vertices form a FIFO agenda. Each agenda entry carries the
    neighbourhood of the path above it, so a child is only drawn from
    neighbours that see no earlier path vertex. Siblings and different
    branches may be adjacent. A child that cannot itself find ``zeta``
    admissible neighbours is pruned before it is committed.

    :param g: Host graph
    :type g: Graph
    :param zeta: Children per internal vertex
    :type zeta: int
    :param eta: Leaf depth
    :type eta: int
    :param root: Fixed root, or ``None`` to try every vertex in ascending id
    :type root: Optional[int]
    :param budget: Optional node budget
    :type budget: Optional[SearchBudget]
    :param avoid: Mask of vertices the tree may not use
    :type avoid: int
    :return: The tree, or ``None`` if none exists
    :rtype: Optional[RootedTreeEmbedding]
    :raises PreconditionError: If ``zeta < 1`` or ``eta < 0``
    :raises BudgetExhausted: If the budget runs out
    """
    if zeta < 1 or eta < 0:
        raise PreconditionError("uniform search needs zeta >= 1 and eta >= 0")
    budget = ensure_budget(budget)
    if uniform_size(zeta, eta) > g.vertex_count:
        return None
    roots = [root] if root is not None else [v for v in g.vertices() if not avoid >> v & 1]

    for r in roots:
        if avoid >> r & 1:
            continue
        parent: Dict[int, int] = {}
        # agenda entries: (vertex, depth, mask of neighbours of its strict ancestors)
        agenda: List[Tuple[int, int, int]] = [(r, 0, 0)]

        def admissible(v: int, forbidden: int, used: int) -> int:
            return g.neighbours(v) & ~forbidden & ~used & ~avoid

        def expand(position: int, used: int) -> bool:
            budget.spend()
            while position < len(agenda) and agenda[position][1] == eta:
                position += 1
            if position == len(agenda):
                return True
            v, depth, forbidden = agenda[position]
            below = forbidden | g.neighbours(v)
            pool = []
            for c in iter_bits(admissible(v, forbidden, used)):
                if depth + 1 == eta or admissible(c, below, used | 1 << c).bit_count() >= zeta:
                    pool.append(c)
            for kids in combinations(pool, zeta):
                mask = 0
                for c in kids:
                    mask |= 1 << c
                    parent[c] = v
                    agenda.append((c, depth + 1, below))
                if expand(position + 1, used | mask):
                    return True
                del agenda[len(agenda) - zeta:]
                for c in kids:
                    del parent[c]
            return False

        if expand(0, 1 << r):
            logger.debug("path-induced (%d,%d)-uniform tree at %d after %d nodes", zeta, eta, r, budget.spent)
            return RootedTreeEmbedding(r, dict(parent))
    return None
