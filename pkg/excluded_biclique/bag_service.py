# excluded_biclique/bag_service.py

from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet, FrozenSet, Optional, Tuple

from networkx.algorithms import isomorphism

from graph_core.abstract_tree import AbstractTree
from graph_core.certificates import InducedEmbedding
from graph_core.errors import PreconditionError
from graph_core.graph import Graph
from witness_search.budget import SearchBudget, ensure_budget
from witness_search.induced_search import find_induced_tree


@dataclass(frozen=True)
class BagFamily:
    """
    Disjoint ``v``-bags packed greedily around ``center``.

    ``embeddings[i]`` maps the pattern onto ``bags[i] | {center}`` with the
    pattern root on ``center``. ``overflow`` is set when the packing reached
    ``s - 1`` bags and stopped.
    """

    center: int
    bags: Tuple[FrozenSet[int], ...]
    embeddings: Tuple[InducedEmbedding, ...]
    overflow: bool = False

    @property
    def union(self) -> FrozenSet[int]:
        return frozenset().union(*self.bags)


def is_v_bag(g: Graph, v: int, bag: AbstractSet[int], h_prime: AbstractTree) -> bool:
    """
    True iff ``g[bag | {v}]`` is isomorphic to ``h_prime`` by a map sending
    its root to ``v``.
    """
    if v in bag or len(bag) != h_prime.vertex_count - 1:
        return False
    host = g.to_networkx().subgraph(set(bag) | {v}).copy()
    for x in host:
        host.nodes[x]["root"] = x == v
    pattern = h_prime.to_networkx()
    for x in pattern:
        pattern.nodes[x]["root"] = x == h_prime.root
    matcher = isomorphism.GraphMatcher(host, pattern, node_match=lambda a, b: a["root"] == b["root"])
    return matcher.is_isomorphic()


def pack_bags(
    g: Graph,
    v: int,
    h_prime: AbstractTree,
    s: int,
    within: Optional[int] = None,
    budget: Optional[SearchBudget] = None,
) -> BagFamily:
    """
    Greedily pack pairwise disjoint ``v``-bags inside ``within``.

    Each new bag is an induced copy of ``h_prime`` rooted at ``v`` that
    avoids every earlier bag, so once the search fails every ``v``-bag meets
    the union of the packed ones. Packing stops with ``overflow`` as soon as
    ``s - 1`` bags exist.

    :param g: Host graph
    :type g: Graph
    :param v: Centre vertex
    :type v: int
    :param h_prime: Rooted pattern with at least two vertices
    :type h_prime: AbstractTree
    :param s: Biclique side size
    :type s: int
    :param within: Optional vertex mask the bags must lie in
    :type within: Optional[int]
    :param budget: Optional node budget
    :type budget: Optional[SearchBudget]
    :rtype: BagFamily
    :raises PreconditionError: If ``h_prime`` has a single vertex
    """
    if h_prime.vertex_count < 2:
        raise PreconditionError("bags need a pattern with at least two vertices")
    budget = ensure_budget(budget)
    allowed = (g.vertex_mask if within is None else within) | 1 << v
    bags, embeddings = [], []
    while True:
        if len(bags) >= s - 1:
            return BagFamily(v, tuple(bags), tuple(embeddings), overflow=True)
        found = find_induced_tree(g, h_prime, root_image=v, budget=budget, within=allowed)
        if found is None:
            return BagFamily(v, tuple(bags), tuple(embeddings))
        bag = frozenset(found.image) - {v}
        bags.append(bag)
        embeddings.append(found)
        for x in bag:
            allowed &= ~(1 << x)
