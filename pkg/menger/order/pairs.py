"""Determining pairs ``(ε, W)`` built from maximal filters."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from menger.config import TieBreak
from menger.errors import DeterminingPairViolation
from menger.kernel import BinaryRelation, relation_properties, subset_properties
from menger.kernel.algebra import BoolTable, IntTable
from menger.order.filters import Filter, is_filter, maximal_filter, separable_pairs
from menger.order.structure import OrderStructure
from menger.terms import TranslationSet

logger = logging.getLogger(__name__)


def _filter_pair(F: Filter) -> tuple[int, int]:
    return F.pair if F.pair is not None else (F.generator, F.generator)


def w_mask(T: TranslationSet, F: Filter, size: int) -> BoolTable:
    """Elements that no translation maps into ``F``."""
    inside = F.mask(size)
    mask: BoolTable = ~inside[T.functions].any(axis=0)
    return mask


def w_ideal(O: OrderStructure, T: TranslationSet, F: Filter) -> frozenset[int]:
    """``W = {x : t(x) not in F for every translation t}``."""
    T.check_matches(O.algebra.menger)
    return frozenset(int(x) for x in np.flatnonzero(w_mask(T, F, O.size)))


@dataclass(frozen=True, eq=False)
class DeterminingPairData:
    """The pair ``(ε, W)`` for one filter.

    ``classes`` are the ε-classes ordered by least member; W is one of them.
    ``class_of[x]`` indexes :attr:`filter_classes` and is -1 on W.
    """

    pair: tuple[int, int]
    filter: Filter
    w: frozenset[int]
    eps: BinaryRelation
    classes: tuple[frozenset[int], ...]

    @cached_property
    def filter_classes(self) -> tuple[frozenset[int], ...]:
        """The classes other than W."""
        return tuple(c for c in self.classes if not c & self.w)

    @cached_property
    def class_of(self) -> IntTable:
        index = np.full(self.eps.size, -1, dtype=np.intp)
        for k, members in enumerate(self.filter_classes):
            index[list(members)] = k
        index.setflags(write=False)
        return index


def epsilon_relation(O: OrderStructure, T: TranslationSet, F: Filter) -> DeterminingPairData:
    """``x ε y`` iff ``x ⋏ y`` lies outside W, or both x and y lie in W.

    Every property the construction guarantees is checked here.

    Raises:
        DeterminingPairViolation: naming the first property that fails.
    """
    S = O.algebra
    T.check_matches(S.menger)
    pair = _filter_pair(F)
    W = w_mask(T, F, O.size)
    bits = ~W[O.meet] | (W[:, None] & W[None, :])
    eps = BinaryRelation(bits=bits)

    if not eps.is_equivalence():
        raise DeterminingPairViolation("equivalence", pair)
    if not relation_properties(S.menger, eps, only={"v_regular"}).v_regular:
        raise DeterminingPairViolation("v-regular", pair)

    classes = tuple(sorted(eps.classes(), key=min))
    w = frozenset(int(x) for x in np.flatnonzero(W))
    if w and w not in classes:
        raise DeterminingPairViolation("w-class", pair, "W is not an ε-class")
    if not subset_properties(S.menger, W).l_ideal:
        raise DeterminingPairViolation("l-ideal", pair)
    for members in classes:
        if members != w and not is_filter(O, members):
            raise DeterminingPairViolation("filter-class", pair, f"class {sorted(members)}")

    inside = np.flatnonzero(W)
    sub_join = O.join[np.ix_(inside, inside)]
    defined = sub_join >= 0
    if not W[sub_join[defined]].all():
        raise DeterminingPairViolation("join-closure", pair)

    return DeterminingPairData(pair=pair, filter=F, w=w, eps=eps, classes=classes)


def determining_pairs(
    O: OrderStructure, T: TranslationSet, tiebreak: TieBreak | None = None
) -> list[DeterminingPairData]:
    """One determining pair per separable ``(a, b)``, in lexicographic order.

    Pairs whose maximal filters coincide share the same ε and W.
    """
    by_generator: dict[int, DeterminingPairData] = {}
    result = []
    for a, b in separable_pairs(O):
        F = maximal_filter(O, a, b, tiebreak)
        shared = by_generator.get(F.generator)
        if shared is None:
            shared = epsilon_relation(O, T, F)
            by_generator[F.generator] = shared
        result.append(
            DeterminingPairData(
                pair=(a, b), filter=F, w=shared.w, eps=shared.eps, classes=shared.classes
            )
        )
    logger.debug(
        "%d determining pairs from %d distinct filters", len(result), len(by_generator)
    )
    return result
