"""Filters of the induced order and maximal separating filters."""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from menger.config import TieBreak, get_config
from menger.errors import DeterminingPairViolation, NotSeparable
from menger.kernel.algebra import BoolTable
from menger.kernel.properties import subset_mask
from menger.order.structure import OrderStructure

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Filter:
    """An up-closed, meet-closed subset, given by its least element.

    ``pair`` is the separated ``(a, b)`` when the filter came from
    :func:`maximal_filter`.
    """

    members: frozenset[int]
    generator: int
    pair: tuple[int, int] | None = None

    def __contains__(self, x: object) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)

    def mask(self, size: int) -> BoolTable:
        return subset_mask(size, self.members)


def principal_filter(O: OrderStructure, c: int) -> Filter:
    """``[c) = {x : c <= x}``."""
    members = frozenset(int(x) for x in np.flatnonzero(O.leq.bits[c]))
    return Filter(members=members, generator=c)


def is_filter(O: OrderStructure, members: Iterable[int]) -> bool:
    """Non-empty, without zero, upward closed and closed under the meet."""
    mask = subset_mask(O.size, members)
    inside = np.flatnonzero(mask)
    if not len(inside) or mask[O.zero]:
        return False
    L = O.leq.bits
    if (L[inside] & ~mask[None, :]).any():
        return False
    return bool(mask[O.meet[np.ix_(inside, inside)]].all())


def enumerate_filters(O: OrderStructure, max_size: int = 12) -> list[frozenset[int]]:
    """Every filter, by brute force over subsets, in order of bitmask value.

    Meant for cross-checking on small algebras.
    """
    if O.size > max_size:
        raise ValueError(f"refusing to enumerate subsets of {O.size} elements (limit {max_size})")
    found = []
    for bits in range(1, 1 << O.size):
        members = [x for x in range(O.size) if bits >> x & 1]
        if is_filter(O, members):
            found.append(frozenset(members))
    return found


def separable_pairs(O: OrderStructure) -> list[tuple[int, int]]:
    """Pairs ``(a, b)`` with ``a`` not below ``b``, in lexicographic order."""
    return [(int(a), int(b)) for a, b in np.argwhere(~O.leq.bits)]


def maximal_filter(
    O: OrderStructure, a: int, b: int, tiebreak: TieBreak | None = None
) -> Filter:
    """A maximal filter containing ``a`` and not ``b``.

    Filters are principal, so this is ``[c)`` for a minimal ``c`` with
    ``c <= a`` and ``c`` not below ``b``. Among several minimal choices
    ``tiebreak`` picks the least or greatest index.

    Raises:
        NotSeparable: ``a <= b``.
        DeterminingPairViolation: the chosen filter fails maximality.
    """
    if tiebreak is None:
        tiebreak = get_config().order.tiebreak
    L = O.leq.bits
    if L[a, b]:
        raise NotSeparable(a, b)

    candidates = L[:, a] & ~L[:, b]
    # c is minimal when no other candidate lies below it
    below = L & candidates[:, None]
    np.fill_diagonal(below, False)
    minimal = np.flatnonzero(candidates & ~below.any(axis=0))
    c = int(minimal[0] if tiebreak == "least" else minimal[-1])
    if len(minimal) > 1:
        logger.debug("pair (%d, %d): %d minimal generators, chose %d", a, b, len(minimal), c)

    chosen = principal_filter(O, c)
    if b in chosen or a not in chosen or not is_filter(O, chosen.members):
        raise DeterminingPairViolation("separating-filter", (a, b), f"generator {c}")
    # any strictly larger filter has a generator strictly below c
    strictly_below = np.flatnonzero(L[:, c])
    for d in strictly_below:
        if d != c and not L[d, b]:
            raise DeterminingPairViolation("maximal-filter", (a, b), f"{int(d)} < {c}")
    return Filter(members=chosen.members, generator=c, pair=(a, b))
