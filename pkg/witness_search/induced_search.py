# witness_search/induced_search.py

from __future__ import annotations

import logging
from typing import Dict, Iterator, List, Optional

from graph_core.abstract_tree import AbstractForest, AbstractTree
from graph_core.certificates import InducedEmbedding
from graph_core.errors import PreconditionError
from graph_core.graph import Graph, iter_bits
from witness_search.budget import SearchBudget, ensure_budget

logger = logging.getLogger(__name__)


# ================= INDUCED TREES =================

def find_induced_tree(
    g: Graph,
    h: AbstractForest,
    root_image: Optional[int] = None,
    budget: Optional[SearchBudget] = None,
    within: Optional[int] = None,
) -> Optional[InducedEmbedding]:
    """
    Search for an induced copy of the pattern forest ``h``.

    Pattern vertices are placed in the BFS order of ``h``. A candidate image
    must be adjacent to its parent's image and non-adjacent to every other
    image placed so far, so the induced condition holds at every node of the
    search rather than being checked at the end. Candidates are tried in
    ascending vertex id.

    :param g: Host graph
    :type g: Graph
    :param h: Pattern forest (its first root is the designated root)
    :type h: AbstractForest
    :param root_image: If given, the designated root must map here
    :type root_image: Optional[int]
    :param budget: Optional node budget
    :type budget: Optional[SearchBudget]
    :param within: Optional mask the images must lie in
    :type within: Optional[int]
    :return: An induced embedding, or ``None`` if none exists
    :rtype: Optional[InducedEmbedding]
    :raises BudgetExhausted: If the budget runs out
    """
    budget = ensure_budget(budget)
    allowed = g.vertex_mask if within is None else within
    if root_image is not None and not allowed >> root_image & 1:
        return None
    order = h.bfs_order()
    image: Dict[int, int] = {}

    def place(index: int, used: int) -> bool:
        budget.spend()
        if index == len(order):
            return True
        x = order[index]
        parent = h.parent[x]
        blocked = used
        for y, v in image.items():
            if y != parent:
                blocked |= g.neighbours(v)
        if parent is None:
            if index == 0 and root_image is not None:
                candidates = (1 << root_image) & ~blocked
            else:
                candidates = allowed & ~blocked
        else:
            candidates = g.neighbours(image[parent]) & allowed & ~blocked
        for v in iter_bits(candidates):
            image[x] = v
            if place(index + 1, used | 1 << v):
                return True
            del image[x]
        return False

    if not place(0, 0):
        logger.debug("no induced copy of %r after %d nodes", h, budget.spent)
        return None
    return InducedEmbedding.from_mapping(h, image)


# ================= INDUCED PATHS =================

def induced_paths_from(
    g: Graph,
    start: int,
    length: int,
    budget: Optional[SearchBudget] = None,
    avoid: int = 0,
) -> Iterator[List[int]]:
    """
    Yield every induced path with ``length`` edges that starts at ``start``,
    in lexicographic order of the vertex sequence.

    :param g: Host graph
    :type g: Graph
    :param start: First vertex
    :type start: int
    :param length: Number of edges
    :type length: int
    :param budget: Optional node budget
    :type budget: Optional[SearchBudget]
    :param avoid: Mask of vertices the path may not use (``start`` excepted)
    :type avoid: int
    :rtype: Iterator[List[int]]
    """
    if length < 0:
        raise PreconditionError("path length must be non-negative")
    budget = ensure_budget(budget)
    path = [start]

    def walk(used: int, forbidden: int) -> Iterator[List[int]]:
        budget.spend()
        if len(path) == length + 1:
            yield list(path)
            return
        last = path[-1]
        for v in iter_bits(g.neighbours(last) & ~used & ~forbidden & ~avoid):
            path.append(v)
            yield from walk(used | 1 << v, forbidden | g.neighbours(last))
            path.pop()

    yield from walk(1 << start, 0)


def find_induced_path(
    g: Graph,
    length: int,
    start: Optional[int] = None,
    budget: Optional[SearchBudget] = None,
) -> Optional[List[int]]:
    """
    First induced path with ``length`` edges, optionally from a fixed start.
    """
    budget = ensure_budget(budget)
    starts = [start] if start is not None else list(g.vertices())
    for v in starts:
        for path in induced_paths_from(g, v, length, budget):
            return path
    return None


# ================= LONG HOLES =================

def find_long_induced_cycle(
    g: Graph,
    ell: int,
    budget: Optional[SearchBudget] = None,
) -> Optional[List[int]]:
    """
    Find an induced cycle with more than ``ell`` vertices.

    Every cycle is found from its smallest vertex ``s``: induced paths are
    grown from ``s`` through larger vertices only, and a path closes when its
    new end is adjacent to ``s``. Requiring the second vertex to be smaller
    than the closing one keeps each cycle to one traversal direction.

    :param g: Host graph
    :type g: Graph
    :param ell: Length to exceed, at least 3
    :type ell: int
    :param budget: Optional node budget
    :type budget: Optional[SearchBudget]
    :return: Cycle vertices in cyclic order starting at the smallest, or ``None``
    :rtype: Optional[List[int]]
    :raises PreconditionError: If ``ell < 3``
    :raises BudgetExhausted: If the budget runs out
    """
    if ell < 3:
        raise PreconditionError("cycle length threshold must be at least 3")
    budget = ensure_budget(budget)

    for s in g.vertices():
        higher = g.vertex_mask & ~((2 << s) - 1)
        path = [s]

        def grow(used: int, forbidden: int) -> Optional[List[int]]:
            # forbidden: neighbours of path[1:-1]
            budget.spend()
            last = path[-1]
            for x in iter_bits(g.neighbours(last) & higher & ~used & ~forbidden):
                if g.has_edge(x, s) and len(path) >= 2:
                    if len(path) + 1 > ell and path[1] < x:
                        return path + [x]
                    continue
                path.append(x)
                extra = g.neighbours(last) if len(path) > 2 else 0
                found = grow(used | 1 << x, forbidden | extra)
                if found is not None:
                    return found
                path.pop()
            return None

        cycle = grow(1 << s, 0)
        if cycle is not None:
            logger.debug("induced cycle of length %d from vertex %d", len(cycle), s)
            return cycle
    return None
