# tree_grower/bounds.py

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional

from graph_core.abstract_tree import AbstractTree
from graph_core.errors import PreconditionError


@dataclass(frozen=True)
class PowerBound:
    """
    ``base ** exponent`` kept symbolic until its value is needed; the
    exponents are factorial-sized.
    """

    base: int
    exponent: int

    @property
    def value(self) -> int:
        return self.base ** self.exponent

    def exceeds(self, d: int) -> bool:
        """
        True iff ``base ** exponent > d``, decided from bit lengths when
        that settles it.
        """
        if d < 1 or self.base < 2:
            return self.value > d
        if (self.base.bit_length() - 1) * self.exponent >= d.bit_length():
            return True
        if self.base.bit_length() * self.exponent <= d.bit_length() - 1:
            return False
        return self.value > d


@dataclass(frozen=True)
class DegeneracyBounds:
    """
    The three degeneracy bounds for ``H``-free, ``K_{t,t}``-free hosts:
    the general one, the path-induced uniform one, and the one for paths.
    """

    main: PowerBound
    vertical: PowerBound
    path: Optional[PowerBound]


def zeta_schedule(h_size: int, zeta: int, eta: int, tt: int) -> List[int]:
    """
    Widths ``zeta_1 .. zeta_k`` with ``zeta_k = zeta`` and
    ``zeta_i = i * zeta_{i+1}**eta * tt**(eta+1)``.

    An ``i``-vertex skeleton decorated with width ``zeta_i`` can take one
    more vertex and stay decorated with width ``zeta_{i+1}``.

    :param h_size: Number ``k`` of target tree vertices
    :type h_size: int
    :param zeta: Final width
    :type zeta: int
    :param eta: Height parameter
    :type eta: int
    :param tt: Biclique parameter
    :type tt: int
    :return: ``[zeta_1, ..., zeta_k]``
    :rtype: List[int]
    """
    if h_size < 1 or zeta < 1 or eta < 1 or tt < 1:
        raise PreconditionError("schedule needs h_size, zeta, eta and tt all at least 1")
    schedule = [zeta]
    for i in range(h_size - 1, 0, -1):
        schedule.append(i * schedule[-1] ** eta * tt ** (eta + 1))
    schedule.reverse()
    return schedule


def degeneracy_bound(h: AbstractTree, zeta: int, eta: int, tt: int) -> DegeneracyBounds:
    """
    :param h: Rooted target tree
    :type h: AbstractTree
    :param zeta: Spread allowance, at least the spread of ``h``
    :type zeta: int
    :param eta: Height allowance, at least the height of ``h``
    :type eta: int
    :param tt: Biclique parameter
    :type tt: int
    :rtype: DegeneracyBounds
    :raises PreconditionError: If ``h`` is taller than ``eta`` or wider than ``zeta``
    """
    if h.height > eta or h.spread > zeta:
        raise PreconditionError(
            f"tree of height {h.height} and spread {h.spread} exceeds eta={eta}, zeta={zeta}"
        )
    if zeta < 1 or eta < 1 or tt < 1:
        raise PreconditionError("zeta, eta and tt must all be at least 1")
    size = h.vertex_count
    main = PowerBound(size * zeta * tt, math.factorial(eta + 3) * size)
    vertical = PowerBound(zeta * tt, math.factorial(eta + 1))
    path = PowerBound(2 * tt, math.factorial(size)) if h.is_path() else None
    return DegeneracyBounds(main, vertical, path)
