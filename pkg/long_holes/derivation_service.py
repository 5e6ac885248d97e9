# long_holes/derivation_service.py

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

from graph_core.errors import ConstructionError, PreconditionError
from graph_core.graph import Graph
from long_holes.infusion_service import Column, Infusion, bad_for_infusion, validate_infusion
from long_holes.tapering_tree import tapering_tree

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Derivation:
    """
    An infusion rooted at ``result.root_image`` built from ``parts``.

    ``sources[i]`` maps every vertex of the ``i``-th root branch of the
    result to the vertex of ``parts[i]``'s tree whose image it copies.
    """

    result: Infusion
    parts: Tuple[Infusion, ...]
    sources: Tuple[Dict[int, int], ...]

    def shifted_column(self, leaf: int) -> Tuple[int, int, Column]:
        """
        The part column that the column of ``result`` ending at ``leaf``
        shifts onto.

        The column of the part runs through the source vertices of the
        branch and continues through first children down to a leaf.

        :return: ``(part index, part leaf, part column)``
        :rtype: Tuple[int, int, Column]
        """
        tree = self.result.tree
        path = tree.path_to_root(leaf)
        index = tree.children[0].index(path[1])
        part = self.parts[index]
        x = self.sources[index][leaf]
        while part.tree.children[x]:
            x = part.tree.children[x][0]
        column = tuple(part.phi[v] for v in part.tree.path_to_root(x))
        return index, x, column


def shrink_infusion(g: Graph, inf: Infusion, u: int) -> Dict[int, int]:
    """
    Embed the ``(t, eta-1)``-tapering tree into ``inf``'s tree so that ``u``
    sees no image except the root's.

    Top-down, each vertex keeps its children whose images are not adjacent
    to ``u``, the required number of them by ascending id.

    :param g: Host graph
    :type g: Graph
    :param inf: Infusion with ``eta >= 1``
    :type inf: Infusion
    :param u: Host vertex outside the infusion, not bad for it
    :type u: int
    :return: Map smaller-tree vertex -> vertex of ``inf.tree``
    :rtype: Dict[int, int]
    :raises PreconditionError: If some vertex keeps too few children
    """
    tree = inf.tree
    smaller = tapering_tree(tree.t, tree.eta - 1)
    nbrs = g.neighbours(u)
    mapping = {0: 0}
    for y in range(smaller.size):
        x = mapping[y]
        need = smaller.children[y]
        if not need:
            continue
        kept = [c for c in tree.children[x] if not nbrs >> inf.phi[c] & 1]
        if len(kept) < len(need):
            raise PreconditionError(f"vertex {x} keeps {len(kept)} children away from {u}, needs {len(need)}")
        for b, c in zip(need, kept):
            mapping[b] = c
    return mapping


def derive_with_sources(g: Graph, u: int, parts: Sequence[Infusion]) -> Derivation:
    """
    Graft ``t**eta`` infusions rooted at neighbours of ``u`` into one
    infusion rooted at ``u``.

    Each part is shrunk to a ``(t, eta-1)``-tapering tree that ``u`` sees
    only at its root, and the ``i``-th root branch of the result copies the
    ``i``-th shrunk part through the height-shift isomorphism.

    :param g: Host graph
    :type g: Graph
    :param u: Root of the result
    :type u: int
    :param parts: ``t**eta`` infusions with distinct roots adjacent to ``u``
    :type parts: Sequence[Infusion]
    :rtype: Derivation
    :raises PreconditionError: Naming the first part that breaks a precondition
    :raises ConstructionError: If the grafted map is not an infusion
    """
    if not parts:
        raise PreconditionError("derivation needs at least one part")
    t, eta = parts[0].tree.t, parts[0].tree.eta
    if eta < 1:
        raise PreconditionError("parts must have height at least 1")
    if len(parts) != t ** eta:
        raise PreconditionError(f"derivation needs {t ** eta} parts, got {len(parts)}")
    roots = set()
    for i, part in enumerate(parts):
        if (part.tree.t, part.tree.eta) != (t, eta):
            raise PreconditionError(f"part {i} is not a ({t},{eta})-infusion")
        if part.root_image in roots:
            raise PreconditionError(f"part {i} repeats root {part.root_image}")
        roots.add(part.root_image)
        if not g.has_edge(u, part.root_image):
            raise PreconditionError(f"part {i} is rooted at {part.root_image}, not a neighbour of {u}")
        if u in part.images:
            raise PreconditionError(f"part {i} uses {u} as an image")
        if bad_for_infusion(g, part, u).is_bad:
            raise PreconditionError(f"{u} is bad for part {i}")

    tree = tapering_tree(t, eta)
    phi = [u] * tree.size
    sources = []
    for i, (child, part) in enumerate(zip(tree.children[0], parts)):
        try:
            shrunk = shrink_infusion(g, part, u)
        except PreconditionError as exc:
            raise PreconditionError(f"part {i}: {exc}") from exc
        source = {z: shrunk[y] for z, y in tree.branch_map(child).items()}
        for z, x in source.items():
            phi[z] = part.phi[x]
        sources.append(source)
    result = Infusion(tree, tuple(phi))
    report = validate_infusion(g, result)
    if not report:
        raise ConstructionError(f"derived map is not an infusion: {report.message}")
    return Derivation(result, tuple(parts), tuple(sources))


def derive_infusion(g: Graph, u: int, parts: Sequence[Infusion]) -> Infusion:
    """The infusion of :func:`derive_with_sources`, without its bookkeeping."""
    return derive_with_sources(g, u, parts).result
