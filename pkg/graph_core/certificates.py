# graph_core/certificates.py

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Optional, Tuple, Union

from graph_core.abstract_tree import AbstractForest
from graph_core.errors import GraphFormatError


@dataclass(frozen=True)
class DegeneracyCertificate:
    """
    Peeling order witnessing ``degeneracy <= bound``: vertex ``ordering[i]``
    has at most ``bound`` neighbours among ``ordering[i+1:]``.
    """

    ordering: Tuple[int, ...]
    bound: int

    kind: str = field(default="degeneracy", init=False, repr=False)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "ordering": list(self.ordering), "bound": self.bound}


@dataclass(frozen=True)
class InducedEmbedding:
    """
    Injective map from a pattern forest into the host that preserves both
    adjacency and non-adjacency.
    """

    pattern: AbstractForest
    image: Tuple[int, ...]

    kind: str = field(default="induced_embedding", init=False, repr=False)

    @classmethod
    def from_mapping(cls, pattern: AbstractForest, mapping: Dict[int, int]) -> "InducedEmbedding":
        return cls(pattern, tuple(mapping[v] for v in range(pattern.vertex_count)))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "pattern": self.pattern.to_dict(), "image": list(self.image)}


@dataclass(frozen=True)
class SubgraphEmbedding:
    """
    Injective map from a pattern tree into the host preserving adjacency only,
    together with a vertex ordering of its image.
    """

    pattern: AbstractForest
    image: Tuple[int, ...]
    ordering: Tuple[int, ...]


@dataclass(frozen=True)
class BicliqueWitness:
    """
    Two disjoint vertex sets with every cross pair adjacent: a ``K_{s,t}``.
    """

    side_a: FrozenSet[int]
    side_b: FrozenSet[int]

    kind: str = field(default="biclique", init=False, repr=False)

    @property
    def s(self) -> int:
        return len(self.side_a)

    @property
    def t(self) -> int:
        return len(self.side_b)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "side_a": sorted(self.side_a),
            "side_b": sorted(self.side_b),
            "s": self.s,
            "t": self.t,
        }


Certificate = Union[DegeneracyCertificate, InducedEmbedding, BicliqueWitness]


def certificate_from_dict(data: dict) -> Certificate:
    """
    Rebuild a certificate from its JSON form, dispatching on ``kind``.

    :param data: Decoded JSON object
    :type data: dict
    :return: The certificate
    :rtype: Certificate
    :raises GraphFormatError: On an unknown kind or missing fields
    """
    kind: Optional[str] = data.get("kind")
    try:
        if kind == "degeneracy":
            return DegeneracyCertificate(tuple(int(v) for v in data["ordering"]), int(data["bound"]))
        if kind == "induced_embedding":
            pattern = AbstractForest.from_dict(data["pattern"])
            return InducedEmbedding(pattern, tuple(int(v) for v in data["image"]))
        if kind == "biclique":
            side_a = frozenset(int(v) for v in data["side_a"])
            side_b = frozenset(int(v) for v in data["side_b"])
            if ("s" in data and int(data["s"]) != len(side_a)) or ("t" in data and int(data["t"]) != len(side_b)):
                raise GraphFormatError("biclique sizes do not match its sides")
            return BicliqueWitness(side_a, side_b)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GraphFormatError):
            raise
        raise GraphFormatError(f"malformed {kind} certificate: {exc}") from exc
    raise GraphFormatError(f"unknown certificate kind {kind!r}")
