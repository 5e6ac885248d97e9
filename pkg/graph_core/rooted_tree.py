# graph_core/rooted_tree.py

from __future__ import annotations

from collections import deque
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from graph_core.errors import PreconditionError
from graph_core.graph import Graph, mask_of


class RootedTreeEmbedding:
    """
    Rooted tree whose vertices are host-graph vertices, given by a parent map.

    The parent relation must be acyclic and reach the root from every member.
    Children are stored in ascending vertex id so that every traversal of the
    tree is deterministic.
    """

    __slots__ = ("root", "_parent", "_children", "_depth", "_members", "_mask")

    def __init__(self, root: int, parent: Mapping[int, int]) -> None:
        """
        :param root: Root vertex
        :type root: int
        :param parent: Map from every non-root member to its parent
        :type parent: Mapping[int, int]
        :raises PreconditionError: If the map has a cycle, contains the root
            as a key or leaves a member disconnected from the root
        """
        if root in parent:
            raise PreconditionError("the root cannot have a parent")
        self.root: int = root
        self._parent: Dict[int, int] = dict(parent)
        self._members: FrozenSet[int] = frozenset(self._parent) | {root}
        children: Dict[int, List[int]] = {v: [] for v in self._members}
        for child, par in self._parent.items():
            if par not in children:
                raise PreconditionError(f"parent {par} of {child} is not a member")
            children[par].append(child)
        self._children: Dict[int, Tuple[int, ...]] = {v: tuple(sorted(c)) for v, c in children.items()}

        self._depth: Dict[int, int] = {root: 0}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for c in self._children[v]:
                self._depth[c] = self._depth[v] + 1
                queue.append(c)
        if len(self._depth) != len(self._members):
            raise PreconditionError("parent map has a cycle or a member unreachable from the root")
        self._mask: int = mask_of(self._members)

    # ================= CONSTRUCTION =================

    @classmethod
    def from_children(cls, root: int, children: Mapping[int, Sequence[int]]) -> "RootedTreeEmbedding":
        parent = {c: v for v, kids in children.items() for c in kids}
        return cls(root, parent)

    @classmethod
    def single(cls, root: int) -> "RootedTreeEmbedding":
        return cls(root, {})

    # ================= QUERIES =================

    @property
    def members(self) -> FrozenSet[int]:
        return self._members

    @property
    def member_mask(self) -> int:
        return self._mask

    @property
    def parent(self) -> Dict[int, int]:
        return dict(self._parent)

    @property
    def size(self) -> int:
        return len(self._members)

    @property
    def height(self) -> int:
        return max(self._depth.values())

    def __contains__(self, v: object) -> bool:
        return v in self._members

    def parent_of(self, v: int) -> Optional[int]:
        return self._parent.get(v)

    def children_of(self, v: int) -> Tuple[int, ...]:
        return self._children[v]

    def depth_of(self, v: int) -> int:
        return self._depth[v]

    def internal_vertices(self) -> List[int]:
        """Members with at least one child, ascending."""
        return sorted(v for v in self._members if self._children[v])

    def leaves(self) -> List[int]:
        return sorted(v for v in self._members if not self._children[v])

    def bfs_order(self) -> Iterator[int]:
        queue = deque([self.root])
        while queue:
            v = queue.popleft()
            yield v
            queue.extend(self._children[v])

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Tree edges as ``(parent, child)`` in BFS order."""
        for v in self.bfs_order():
            for c in self._children[v]:
                yield v, c

    def path_to_root(self, v: int) -> List[int]:
        """
        Vertices of the tree path from the root down to ``v``.

        :param v: Member vertex
        :type v: int
        :rtype: List[int]
        """
        path = [v]
        while v != self.root:
            v = self._parent[v]
            path.append(v)
        path.reverse()
        return path

    def is_valid_in(self, g: Graph) -> bool:
        """
        True iff all members are host vertices and all parent edges are host edges.
        """
        if any(not 0 <= v < g.vertex_count for v in self._members):
            return False
        return all(g.has_edge(c, p) for c, p in self._parent.items())

    # ================= DERIVED TREES =================

    def hanging_subtree(self, v: int) -> "RootedTreeEmbedding":
        """
        The subtree of all descendants of ``v``, rooted at ``v``.
        """
        parent: Dict[int, int] = {}
        stack = [v]
        while stack:
            x = stack.pop()
            for c in self._children[x]:
                parent[c] = x
                stack.append(c)
        return RootedTreeEmbedding(v, parent)

    def restricted(self, keep: Iterable[int]) -> "RootedTreeEmbedding":
        """
        The rooted subtree on ``keep``, which must contain the root and be
        closed under taking parents.

        :raises PreconditionError: If ``keep`` is not such a set
        """
        kept = set(keep)
        if self.root not in kept or not kept <= self._members:
            raise PreconditionError("a rooted subtree must keep the root and only members")
        parent = {}
        for v in kept:
            if v == self.root:
                continue
            par = self._parent[v]
            if par not in kept:
                raise PreconditionError(f"vertex {v} kept without its parent {par}")
            parent[v] = par
        return RootedTreeEmbedding(self.root, parent)

    def is_rooted_subtree_of(self, other: "RootedTreeEmbedding") -> bool:
        if self.root != other.root or not self._members <= other.members:
            return False
        return all(other.parent_of(v) == p for v, p in self._parent.items())

    # ================= SERIALIZATION =================

    def to_dict(self) -> dict:
        return {"root": self.root, "parent": {str(c): p for c, p in sorted(self._parent.items())}}

    @classmethod
    def from_dict(cls, data: dict) -> "RootedTreeEmbedding":
        return cls(int(data["root"]), {int(c): int(p) for c, p in data["parent"].items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RootedTreeEmbedding) and self.root == other.root and self._parent == other._parent

    def __hash__(self) -> int:
        return hash((self.root, frozenset(self._parent.items())))

    def __repr__(self) -> str:
        return f"RootedTreeEmbedding(root={self.root}, size={self.size}, height={self.height})"


def is_uniform(t: RootedTreeEmbedding, zeta: int, eta: int) -> bool:
    """
    True iff every vertex with a child has exactly ``zeta`` children and every
    leaf sits at depth exactly ``eta``.

    ``eta = 0`` describes the one-vertex tree.

    :param t: Rooted tree
    :type t: RootedTreeEmbedding
    :param zeta: Required number of children
    :type zeta: int
    :param eta: Required leaf depth
    :type eta: int
    :rtype: bool
    """
    if zeta < 1 or eta < 0:
        raise PreconditionError("uniformity needs zeta >= 1 and eta >= 0")
    for v in t.members:
        kids = len(t.children_of(v))
        if kids == 0:
            if t.depth_of(v) != eta:
                return False
        elif kids != zeta:
            return False
    return True


def uniform_size(zeta: int, eta: int) -> int:
    """Member count ``1 + zeta + ... + zeta**eta`` of a uniform tree."""
    return sum(zeta ** i for i in range(eta + 1))
