# graph_core/abstract_tree.py

from __future__ import annotations

from collections import deque
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from graph_core.errors import PreconditionError


class AbstractForest:
    """
    Pattern forest on vertices ``0..vertex_count-1``.

    Every component has a designated root (its smallest vertex unless given);
    children lists are kept in ascending order so every traversal is
    reproducible.
    """

    def __init__(
        self,
        vertex_count: int,
        edges: Iterable[Tuple[int, int]],
        roots: Optional[Sequence[int]] = None,
    ) -> None:
        """
        :param vertex_count: Number of pattern vertices
        :type vertex_count: int
        :param edges: Pattern edges
        :type edges: Iterable[Tuple[int, int]]
        :param roots: One root per component, in any order
        :type roots: Optional[Sequence[int]]
        :raises PreconditionError: If the edges contain a cycle, a loop or a
            repeated edge, or the roots do not pick one vertex per component
        """
        if vertex_count < 1:
            raise PreconditionError("a pattern needs at least one vertex")
        self.vertex_count: int = vertex_count
        self._adjacent: List[List[int]] = [[] for _ in range(vertex_count)]
        normalized = set()
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count) or u == v:
                raise PreconditionError(f"bad pattern edge {u}-{v}")
            key = (min(u, v), max(u, v))
            if key in normalized:
                raise PreconditionError(f"repeated pattern edge {u}-{v}")
            normalized.add(key)
            self._adjacent[u].append(v)
            self._adjacent[v].append(u)
        for nbrs in self._adjacent:
            nbrs.sort()
        self.edges: Tuple[Tuple[int, int], ...] = tuple(sorted(normalized))

        components = self._components()
        if len(self.edges) != vertex_count - len(components):
            raise PreconditionError("pattern edges contain a cycle")
        if roots is None:
            roots = [min(component) for component in components]
        owner = {v: i for i, component in enumerate(components) for v in component}
        if sorted(owner[r] for r in roots) != list(range(len(components))):
            raise PreconditionError("roots must pick exactly one vertex per component")
        self.roots: Tuple[int, ...] = tuple(sorted(roots, key=lambda r: min(components[owner[r]])))

        self.parent: List[Optional[int]] = [None] * vertex_count
        self.depth: List[int] = [0] * vertex_count
        self.children: List[List[int]] = [[] for _ in range(vertex_count)]
        self._order: List[int] = []
        for root in self.roots:
            queue = deque([root])
            seen = {root}
            while queue:
                v = queue.popleft()
                self._order.append(v)
                for w in self._adjacent[v]:
                    if w not in seen:
                        seen.add(w)
                        self.parent[w] = v
                        self.depth[w] = self.depth[v] + 1
                        self.children[v].append(w)
                        queue.append(w)

    def _components(self) -> List[List[int]]:
        seen = [False] * self.vertex_count
        components: List[List[int]] = []
        for start in range(self.vertex_count):
            if seen[start]:
                continue
            seen[start] = True
            stack, members = [start], []
            while stack:
                v = stack.pop()
                members.append(v)
                for w in self._adjacent[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            components.append(sorted(members))
        return components

    # ================= QUERIES =================

    def neighbours(self, v: int) -> List[int]:
        return list(self._adjacent[v])

    def degree(self, v: int) -> int:
        return len(self._adjacent[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjacent[u]

    def bfs_order(self) -> List[int]:
        """
        Vertices component by component, each in BFS order from its root.
        Every non-root vertex appears after its parent.
        """
        return list(self._order)

    @property
    def is_tree(self) -> bool:
        return len(self.roots) == 1

    def to_networkx(self) -> nx.Graph:
        pattern = nx.Graph()
        pattern.add_nodes_from(range(self.vertex_count))
        pattern.add_edges_from(self.edges)
        return pattern

    def to_dict(self) -> dict:
        return {
            "vertex_count": self.vertex_count,
            "edges": [list(edge) for edge in self.edges],
            "roots": list(self.roots),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AbstractForest":
        roots = data.get("roots")
        edges = [tuple(edge) for edge in data["edges"]]
        if roots is not None and len(roots) == 1:
            return AbstractTree(data["vertex_count"], edges, root=roots[0])
        return cls(data["vertex_count"], edges, roots)

    def __len__(self) -> int:
        return self.vertex_count

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, AbstractForest)
            and self.vertex_count == other.vertex_count
            and self.edges == other.edges
            and self.roots == other.roots
        )

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.edges, self.roots))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.vertex_count}, edges={list(self.edges)})"


class AbstractTree(AbstractForest):
    """
    Connected pattern with a designated root: the rooted tree ``(H, r)``.
    """

    def __init__(
        self,
        vertex_count: int,
        edges: Iterable[Tuple[int, int]],
        root: int = 0,
    ) -> None:
        super().__init__(vertex_count, edges, roots=[root])
        if not self.is_tree:
            raise PreconditionError("pattern tree must be connected")
        self.root: int = root

    # ================= SHAPE =================

    @property
    def height(self) -> int:
        return max(self.depth)

    @property
    def spread(self) -> int:
        return max(len(kids) for kids in self.children)

    def leaves(self) -> List[int]:
        """Vertices of degree at most one, ascending."""
        return [v for v in range(self.vertex_count) if self.degree(v) <= 1]

    def is_path(self) -> bool:
        return all(self.degree(v) <= 2 for v in range(self.vertex_count))

    def eccentricity(self, v: int) -> int:
        distance = {v: 0}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for w in self._adjacent[x]:
                if w not in distance:
                    distance[w] = distance[x] + 1
                    queue.append(w)
        return max(distance.values())

    # ================= DERIVED TREES =================

    def rerooted(self, root: int) -> "AbstractTree":
        return AbstractTree(self.vertex_count, self.edges, root=root)

    def without_leaf(self, leaf: int, root: Optional[int] = None) -> Tuple["AbstractTree", Dict[int, int]]:
        """
        Delete a leaf and relabel densely.

        :param leaf: Vertex of degree one
        :type leaf: int
        :param root: Old id of the root of the result (defaults to the current
            root, or the leaf's neighbour when the leaf is the root)
        :type root: Optional[int]
        :return: The smaller tree and the map old id -> new id
        :rtype: Tuple[AbstractTree, Dict[int, int]]
        :raises PreconditionError: If ``leaf`` is not a leaf of a tree with at
            least two vertices
        """
        if self.vertex_count < 2 or self.degree(leaf) != 1:
            raise PreconditionError(f"vertex {leaf} is not a leaf")
        if root is None:
            root = self.root if self.root != leaf else self._adjacent[leaf][0]
        mapping = {}
        for v in range(self.vertex_count):
            if v != leaf:
                mapping[v] = len(mapping)
        edges = [(mapping[u], mapping[v]) for u, v in self.edges if leaf not in (u, v)]
        return AbstractTree(self.vertex_count - 1, edges, root=mapping[root]), mapping

    def extremal_leaf(self) -> int:
        """
        Leaf of maximum eccentricity, ties broken by smallest id.
        """
        leaves = [v for v in range(self.vertex_count) if self.degree(v) == 1]
        if not leaves:
            raise PreconditionError("a single vertex has no leaf")
        return max(leaves, key=lambda v: (self.eccentricity(v), -v))

    # ================= FACTORIES =================

    @classmethod
    def single(cls) -> "AbstractTree":
        return cls(1, [])

    @classmethod
    def path(cls, vertex_count: int) -> "AbstractTree":
        """Path ``0-1-...-(n-1)`` rooted at vertex 0."""
        return cls(vertex_count, [(i, i + 1) for i in range(vertex_count - 1)])

    @classmethod
    def star(cls, leaves: int) -> "AbstractTree":
        """Star rooted at its centre 0."""
        return cls(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    @classmethod
    def spider(cls, legs: int, length: int) -> "AbstractTree":
        """
        ``legs`` paths of ``length`` edges glued at the root 0.
        """
        edges = []
        next_id = 1
        for _ in range(legs):
            previous = 0
            for _ in range(length):
                edges.append((previous, next_id))
                previous = next_id
                next_id += 1
        return cls(next_id, edges)

    @classmethod
    def uniform(cls, zeta: int, eta: int) -> "AbstractTree":
        """
        The ``(zeta, eta)``-uniform rooted tree, vertices numbered in BFS order.
        """
        if zeta < 1 or eta < 0:
            raise PreconditionError("uniform tree needs zeta >= 1 and eta >= 0")
        edges = []
        level = [0]
        next_id = 1
        for _ in range(eta):
            new_level = []
            for v in level:
                for _ in range(zeta):
                    edges.append((v, next_id))
                    new_level.append(next_id)
                    next_id += 1
            level = new_level
        return cls(next_id, edges)

    @classmethod
    def parse_spec(cls, spec: str) -> "AbstractTree":
        """
        Build a tree from a short textual spec: ``path:N``, ``star:K``,
        ``spider:LEGSxLENGTH`` or ``uniform:ZETAxETA``.

        :param spec: Textual description
        :type spec: str
        :rtype: AbstractTree
        :raises PreconditionError: On an unknown shape
        """
        kind, _, arg = spec.partition(":")
        try:
            if kind == "path":
                return cls.path(int(arg))
            if kind == "star":
                return cls.star(int(arg))
            if kind == "spider":
                legs, length = arg.split("x")
                return cls.spider(int(legs), int(length))
            if kind == "uniform":
                zeta, eta = arg.split("x")
                return cls.uniform(int(zeta), int(eta))
        except ValueError as exc:
            raise PreconditionError(f"bad tree spec {spec!r}: {exc}") from exc
        raise PreconditionError(f"unknown tree spec {spec!r}")
