# tree_grower/decorated_tree.py

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional

from graph_core.errors import PreconditionError
from graph_core.graph import Graph, iter_bits
from graph_core.rooted_tree import RootedTreeEmbedding, is_uniform
from graph_core.validators import validate_path_induced


@dataclass(frozen=True)
class DecoratedTree:
    """
    An induced skeleton ``S`` inside a path-induced scaffold ``T``.

    Every skeleton vertex at height ``h`` carries a ``(zeta, eta-h)``-uniform
    decoration: the part of ``T`` hanging off it through non-skeleton edges.
    """

    skeleton: RootedTreeEmbedding
    scaffold: RootedTreeEmbedding
    zeta: int
    eta: int


@dataclass(frozen=True)
class DecorationReport:
    """
    ``violated`` names the first failed condition: 0 for the skeleton itself
    (rooted subtree, induced, height), 1 to 3 for the three scaffold
    conditions in order.
    """

    valid: bool
    violated: Optional[int] = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.valid


def single_vertex_decorated(scaffold: RootedTreeEmbedding, zeta: int, eta: int) -> DecoratedTree:
    """The one-vertex skeleton at the root of a uniform scaffold."""
    return DecoratedTree(RootedTreeEmbedding.single(scaffold.root), scaffold, zeta, eta)


def decoration_of(d: DecoratedTree, v: int) -> RootedTreeEmbedding:
    """
    The decoration of the skeleton at ``v``: ``v`` and everything below it
    reached through scaffold edges that are not skeleton edges.

    :param d: Decorated tree
    :type d: DecoratedTree
    :param v: Skeleton vertex
    :type v: int
    :rtype: RootedTreeEmbedding
    :raises PreconditionError: If ``v`` is not a skeleton vertex
    """
    if v not in d.skeleton:
        raise PreconditionError(f"vertex {v} is not in the skeleton")
    parent: Dict[int, int] = {}
    stack = [v]
    while stack:
        x = stack.pop()
        for c in d.scaffold.children_of(x):
            if c not in d.skeleton:
                parent[c] = x
                stack.append(c)
    return RootedTreeEmbedding(v, parent)


def validate_decorated(g: Graph, d: DecoratedTree) -> DecorationReport:
    """
    Check every condition of a ``(zeta, eta)``-decorated tree against ``g``.

    The skeleton height may reach ``eta``; a skeleton vertex at height
    ``eta`` carries the one-vertex decoration.

    :param g: Host graph
    :type g: Graph
    :param d: Candidate decorated tree
    :type d: DecoratedTree
    :return: Report naming the first violated condition
    :rtype: DecorationReport
    """
    s, t = d.skeleton, d.scaffold
    if d.zeta < 1:
        return DecorationReport(False, 3, "decoration width must be at least 1")
    if not s.is_rooted_subtree_of(t):
        return DecorationReport(False, 0, "skeleton is not a rooted subtree of the scaffold")
    if not t.is_valid_in(g):
        return DecorationReport(False, 1, "scaffold edge missing from the host")
    members = s.member_mask
    for v in s.members:
        expected = 0
        if s.parent_of(v) is not None:
            expected |= 1 << s.parent_of(v)
        for c in s.children_of(v):
            expected |= 1 << c
        if g.neighbours(v) & members != expected:
            return DecorationReport(False, 0, f"skeleton is not induced at vertex {v}")
    if s.height > d.eta:
        return DecorationReport(False, 0, f"skeleton height {s.height} exceeds {d.eta}")

    if not validate_path_induced(g, t):
        return DecorationReport(False, 1, "scaffold is not path-induced")

    outside = t.member_mask & ~members
    for u in s.members:
        for v in iter_bits(g.neighbours(u) & outside):
            if t.parent_of(v) != u and t.parent_of(u) != v:
                return DecorationReport(False, 2, f"host edge {u}-{v} is not a scaffold edge")

    for v in sorted(s.members):
        height = d.eta - s.depth_of(v)
        if not is_uniform(decoration_of(d, v), d.zeta, height):
            return DecorationReport(False, 3, f"decoration at {v} is not ({d.zeta},{height})-uniform")
    return DecorationReport(True)
