# long_holes/tapering_tree.py

from __future__ import annotations

from collections import deque
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from graph_core.errors import PreconditionError


class TaperingTree:
    """
    Abstract rooted tree of height ``eta`` in which a vertex at depth
    ``i < eta`` has exactly ``t ** (eta - i)`` children.

    Vertices are numbered in BFS order from the root ``0``, children of a
    vertex consecutively, so the tree for given ``(t, eta)`` is unique.
    """

    __slots__ = ("t", "eta", "parent", "depth", "children")

    def __init__(self, t: int, eta: int) -> None:
        """
        :param t: Taper base, at least 1
        :type t: int
        :param eta: Height, at least 0
        :type eta: int
        :raises PreconditionError: If ``t < 1`` or ``eta < 0``
        """
        if t < 1 or eta < 0:
            raise PreconditionError("tapering trees need t >= 1 and eta >= 0")
        self.t: int = t
        self.eta: int = eta
        self.parent: List[Optional[int]] = [None]
        self.depth: List[int] = [0]
        self.children: List[Tuple[int, ...]] = []
        queue = deque([0])
        while queue:
            v = queue.popleft()
            d = self.depth[v]
            if d == eta:
                self.children.append(())
                continue
            first = len(self.parent)
            count = t ** (eta - d)
            for _ in range(count):
                self.parent.append(v)
                self.depth.append(d + 1)
            kids = tuple(range(first, first + count))
            self.children.append(kids)
            queue.extend(kids)

    @property
    def size(self) -> int:
        return len(self.parent)

    @property
    def leaf_count(self) -> int:
        return self.t ** (self.eta * (self.eta + 1) // 2)

    def internal_vertices(self) -> List[int]:
        return [v for v in range(self.size) if self.depth[v] < self.eta]

    def leaves(self) -> List[int]:
        return [v for v in range(self.size) if self.depth[v] == self.eta]

    def edges(self) -> List[Tuple[int, int]]:
        return [(self.parent[v], v) for v in range(1, self.size)]

    def path_to_root(self, v: int) -> List[int]:
        """Vertices from the root down to ``v``."""
        path = [v]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]])
        path.reverse()
        return path

    def branch_map(self, child: int) -> Dict[int, int]:
        """
        The height-shift isomorphism from the branch below the root child
        ``child`` onto the ``(t, eta-1)``-tapering tree.

        :param child: A child of the root
        :type child: int
        :return: Map branch vertex -> vertex of the smaller tree
        :rtype: Dict[int, int]
        :raises PreconditionError: If ``child`` is not a root child
        """
        if self.eta == 0 or self.parent[child] != 0:
            raise PreconditionError(f"vertex {child} is not a child of the root")
        smaller = tapering_tree(self.t, self.eta - 1)
        mapping = {child: 0}
        stack = [(child, 0)]
        while stack:
            x, y = stack.pop()
            for a, b in zip(self.children[x], smaller.children[y]):
                mapping[a] = b
                stack.append((a, b))
        return mapping

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TaperingTree) and (self.t, self.eta) == (other.t, other.eta)

    def __hash__(self) -> int:
        return hash((self.t, self.eta))

    def __repr__(self) -> str:
        return f"TaperingTree(t={self.t}, eta={self.eta}, size={self.size})"


@lru_cache(maxsize=None)
def tapering_tree(t: int, eta: int) -> TaperingTree:
    """Shared instance of the ``(t, eta)``-tapering tree."""
    return TaperingTree(t, eta)
