"""Substitution properties of relations and subsets of a Menger algebra."""

from __future__ import annotations

from collections.abc import Collection, Iterable
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from menger.errors import IndexOutOfRange, ShapeMismatch
from menger.kernel.algebra import BinaryRelation, BoolTable, FiniteMengerAlgebra, IntTable
from menger.kernel.scan import MAX_GRID_CELLS
from menger.terms import TranslationSet, elementary_translations, translations

RELATION_FLAGS = ("stable", "l_regular", "v_regular", "i_regular", "weakly_steady")


@dataclass(frozen=True)
class RelationProperties:
    """Flags of a binary relation; a flag left unevaluated is ``None``."""

    stable: bool | None = None
    l_regular: bool | None = None
    v_regular: bool | None = None
    i_regular: tuple[bool, ...] | None = None
    weakly_steady: bool | None = None


@dataclass(frozen=True)
class SubsetProperties:
    stable_subset: bool
    l_ideal: bool
    i_ideal: tuple[bool, ...]


def _unique_pairs(left: IntTable, right: IntTable) -> tuple[IntTable, IntTable]:
    width = left.shape[1]
    joined = np.unique(np.concatenate([left, right], axis=1), axis=0)
    return joined[:, :width], joined[:, width:]


def _preserved(op: IntTable, bits: BoolTable, heads: IntTable) -> bool:
    """Whether ``(a[x_1..x_n], b[y_1..y_n])`` stays in ``bits`` for all heads ``(a, b)``.

    Arguments ``(x_i, y_i)`` range over the relation. Partial applications
    are deduplicated after each argument is consumed.
    """
    pairs = np.argwhere(bits)
    if len(pairs) == 0 or len(heads) == 0:
        return True
    m, n = op.shape[0], op.ndim - 1
    xs, ys = pairs[:, 0], pairs[:, 1]
    left = op[heads[:, 0]].reshape(len(heads), -1)
    right = op[heads[:, 1]].reshape(len(heads), -1)
    left, right = _unique_pairs(left, right)

    for remaining in range(n, 1, -1):
        width = m ** (remaining - 1)
        step = max(1, MAX_GRID_CELLS // max(len(pairs) * width, 1))
        next_left: list[IntTable] = []
        next_right: list[IntTable] = []
        for start in range(0, len(left), step):
            block_left = left[start : start + step].reshape(-1, m, width)
            block_right = right[start : start + step].reshape(-1, m, width)
            chunk_left = block_left[:, xs, :].reshape(-1, width)
            chunk_right = block_right[:, ys, :].reshape(-1, width)
            chunk_left, chunk_right = _unique_pairs(chunk_left, chunk_right)
            next_left.append(chunk_left)
            next_right.append(chunk_right)
        left, right = _unique_pairs(np.concatenate(next_left), np.concatenate(next_right))

    step = max(1, MAX_GRID_CELLS // len(pairs))
    for start in range(0, len(left), step):
        final_left = left[start : start + step][:, xs]
        final_right = right[start : start + step][:, ys]
        if not bits[final_left, final_right].all():
            return False
    return True


def _l_regular(op: IntTable, bits: BoolTable) -> bool:
    pairs = np.argwhere(bits)
    m = op.shape[0]
    width = op.size // m
    step = max(1, MAX_GRID_CELLS // width)
    for start in range(0, len(pairs), step):
        chunk = pairs[start : start + step]
        lhs = op[chunk[:, 0]].reshape(len(chunk), -1)
        rhs = op[chunk[:, 1]].reshape(len(chunk), -1)
        if not bits[lhs, rhs].all():
            return False
    return True


def _rows_preserve(rows: IntTable, bits: BoolTable) -> bool:
    pairs = np.argwhere(bits)
    if len(pairs) == 0:
        return True
    rows = np.unique(rows, axis=0)
    step = max(1, MAX_GRID_CELLS // len(pairs))
    for start in range(0, len(rows), step):
        block = rows[start : start + step]
        if not bits[block[:, pairs[:, 0]], block[:, pairs[:, 1]]].all():
            return False
    return True


def _weakly_steady(bits: BoolTable, T: TranslationSet) -> bool:
    functions = T.functions
    # reaches[z, t, v] = (z, t(v)) in the relation
    reaches = bits[:, functions]
    some_t1 = reaches.any(axis=1)
    for x, y in np.argwhere(bits):
        hypothesis = some_t1[:, x][:, None] & reaches[:, :, y]
        if (hypothesis & ~reaches[:, :, x]).any():
            return False
    return True


def relation_properties(
    M: FiniteMengerAlgebra,
    r: BinaryRelation,
    translation_set: TranslationSet | None = None,
    *,
    only: Collection[str] | None = None,
) -> RelationProperties:
    """Decide the substitution properties of ``r`` by exhaustive scan.

    Weak steadiness quantifies over translations; they are computed when not
    supplied. For quasiorders the flags are cross-checked against each other
    and a disagreement raises ``AssertionError``.
    """
    if r.size != M.size:
        raise ShapeMismatch(f"relation on {r.size} elements, algebra has {M.size}")
    wanted = set(RELATION_FLAGS if only is None else only)
    unknown = wanted - set(RELATION_FLAGS)
    if unknown:
        raise ValueError(f"unknown relation properties: {sorted(unknown)}")
    op, bits = M.op, r.bits

    stable = _preserved(op, bits, r.pairs) if "stable" in wanted else None
    l_regular = _l_regular(op, bits) if "l_regular" in wanted else None
    diagonal = np.repeat(np.arange(M.size, dtype=np.intp)[:, None], 2, axis=1)
    v_regular = _preserved(op, bits, diagonal) if "v_regular" in wanted else None
    i_regular: tuple[bool, ...] | None = None
    if "i_regular" in wanted:
        elementary = elementary_translations(M)
        i_regular = tuple(
            _rows_preserve(elementary.at_position(i), bits) for i in range(1, M.rank + 1)
        )
    weakly_steady = None
    if "weakly_steady" in wanted:
        if translation_set is None:
            translation_set = translations(M)
        translation_set.check_matches(M)
        weakly_steady = _weakly_steady(bits, translation_set)

    if r.is_quasiorder():
        if v_regular is not None and i_regular is not None and v_regular != all(i_regular):
            raise AssertionError("quasiorder: v-regularity disagrees with i-regularity")
        if (
            stable is not None
            and v_regular is not None
            and l_regular is not None
            and stable != (v_regular and l_regular)
        ):
            raise AssertionError("quasiorder: stability disagrees with l- and v-regularity")

    return RelationProperties(
        stable=stable,
        l_regular=l_regular,
        v_regular=v_regular,
        i_regular=i_regular,
        weakly_steady=weakly_steady,
    )


def subset_mask(size: int, H: Iterable[int] | npt.NDArray[np.bool_]) -> BoolTable:
    if isinstance(H, np.ndarray) and H.dtype == np.bool_:
        if H.shape != (size,):
            raise ShapeMismatch(f"subset mask of shape {H.shape} for carrier of size {size}")
        return H
    mask = np.zeros(size, dtype=np.bool_)
    for h in H:
        if not 0 <= h < size:
            raise IndexOutOfRange(int(h), size)
        mask[h] = True
    return mask


def subset_properties(
    M: FiniteMengerAlgebra, H: Iterable[int] | npt.NDArray[np.bool_]
) -> SubsetProperties:
    """Stability, l-ideal and i-ideal flags of ``H``."""
    mask = subset_mask(M.size, H)
    n, op = M.rank, M.op
    members = np.flatnonzero(mask)

    if len(members):
        closed = op[np.ix_(*([members] * (n + 1)))]
        stable_subset = bool(mask[closed].all())
    else:
        stable_subset = True

    # some argument in H forces the result into H
    touches = np.zeros((M.size,) * n, dtype=np.bool_)
    for axis in range(n):
        shape = [1] * n
        shape[axis] = M.size
        touches = touches | mask.reshape(shape)
    l_ideal = bool(mask[op[:, touches]].all()) if touches.any() else True

    elementary = elementary_translations(M)
    i_ideal = tuple(
        bool(mask[elementary.at_position(i)[:, members]].all()) for i in range(1, n + 1)
    )
    if l_ideal != all(i_ideal):
        raise AssertionError("l-ideal flag disagrees with the i-ideal flags")
    return SubsetProperties(stable_subset=stable_subset, l_ideal=l_ideal, i_ideal=i_ideal)
