"""Exhaustive quantifier scans over broadcast index grids.

A formula receives one array per quantified variable, shaped so that the
variables broadcast against each other in substitution order, and returns
the violation mask. Leading variables are fixed one value at a time when
the full grid would be too large, which keeps witnesses in lexicographic
order.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator
from dataclasses import dataclass
from itertools import product
from math import prod

import numpy as np
import numpy.typing as npt

from menger.kernel.report import WitnessCollector

BoolArray = npt.NDArray[np.bool_]
IndexArray = npt.NDArray[np.intp]

MAX_GRID_CELLS = 1 << 22


def grid_axes(size: int, arity: int) -> list[IndexArray]:
    """One ``arange(size)`` per variable, each along its own axis."""
    axes = []
    for k in range(arity):
        shape = (1,) * k + (size,) + (1,) * (arity - 1 - k)
        axes.append(np.arange(size, dtype=np.intp).reshape(shape))
    return axes


def grid_chunks(
    size: int, arity: int, max_cells: int = MAX_GRID_CELLS
) -> Iterator[tuple[tuple[int, ...], list[IndexArray | np.intp]]]:
    fixed = 0
    while fixed < arity and size ** (arity - fixed) > max_cells:
        fixed += 1
    free = grid_axes(size, arity - fixed)
    for prefix in product(range(size), repeat=fixed):
        values: list[IndexArray | np.intp] = [np.intp(v) for v in prefix]
        yield prefix, values + list(free)


def scan_identity(
    collector: WitnessCollector,
    axiom: str,
    size: int,
    arity: int,
    formula: Callable[..., npt.ArrayLike],
) -> None:
    """Scan ``formula`` over every substitution of ``arity`` carrier elements."""
    collector.declare(axiom)
    for prefix, variables in grid_chunks(size, arity):
        free = arity - len(prefix)
        mask = np.broadcast_to(np.asarray(formula(*variables), dtype=np.bool_), (size,) * free)
        collector.scan(axiom, mask, prefix)


def scan_rows(
    collector: WitnessCollector,
    axiom: str,
    rows: IndexArray,
    labels: IndexArray,
    formula: Callable[[IndexArray], npt.ArrayLike],
) -> None:
    """Scan a formula whose first variable ranges over table rows.

    ``formula(block)`` returns a mask whose first axis follows ``block``;
    a witness reports the row's ``labels`` followed by the remaining indices.
    """
    collector.declare(axiom)
    if len(rows) == 0:
        return
    width = max(int(np.prod(rows.shape[1:])), 1)
    step = max(1, MAX_GRID_CELLS // (width * width))
    for start in range(0, len(rows), step):
        block = rows[start : start + step]
        mask = np.asarray(formula(block), dtype=np.bool_)

        def expand(cell: tuple[int, ...], offset: int = start) -> tuple[int, ...]:
            return tuple(int(v) for v in labels[offset + cell[0]]) + cell[1:]

        collector.scan(axiom, mask, expand=expand)


def scan_per_element(
    collector: WitnessCollector,
    axiom: str,
    size: int,
    formula: Callable[[np.intp], npt.ArrayLike],
) -> None:
    """Scan a formula with the first element variable fixed one value at a time."""
    collector.declare(axiom)
    for x in range(size):
        mask = np.asarray(formula(np.intp(x)), dtype=np.bool_)
        collector.scan(axiom, mask, (x,))


@dataclass(frozen=True)
class SharedAxisProduct:
    """The mask ``left[g, s] & right[g, t]`` over axes ``(g, s, t)``, kept factored."""

    left: BoolArray
    right: BoolArray

    @property
    def size(self) -> int:
        return int(self.left.shape[0] * self.left.shape[1] * self.right.shape[1])

    def count(self) -> int:
        lefts = self.left.sum(axis=1, dtype=np.int64)
        rights = self.right.sum(axis=1, dtype=np.int64)
        return int((lefts * rights).sum())

    def cells(self) -> Iterator[tuple[int, ...]]:
        for g in range(self.left.shape[0]):
            lefts = np.flatnonzero(self.left[g])
            if not len(lefts):
                continue
            rights = np.flatnonzero(self.right[g])
            for s in lefts:
                for t in rights:
                    yield (g, int(s), int(t))


InnerMask = BoolArray | SharedAxisProduct


def _inner_count(inner: InnerMask) -> int:
    if isinstance(inner, SharedAxisProduct):
        return inner.count()
    return int(np.count_nonzero(inner))


def _inner_size(inner: InnerMask) -> int:
    if isinstance(inner, SharedAxisProduct):
        return inner.size
    return int(inner.size)


def _inner_cells(inner: InnerMask) -> Iterator[tuple[int, ...]]:
    if isinstance(inner, SharedAxisProduct):
        yield from inner.cells()
        return
    for flat in np.flatnonzero(inner):
        yield tuple(int(v) for v in np.unravel_index(int(flat), inner.shape))


def scan_keyed(
    collector: WitnessCollector,
    axiom: str,
    keys: IndexArray,
    outer_shape: tuple[int, ...],
    evaluate: Callable[[tuple[int, ...]], InnerMask],
) -> None:
    """Scan a formula whose inner mask depends on the outer variables only through a key.

    ``keys`` has one row per outer substitution in C order of ``outer_shape``.
    Each distinct key is evaluated once; substitutions are then reported as
    the outer tuple followed by the inner index tuple.
    """
    collector.declare(axiom)
    outer_count = prod(outer_shape)
    if outer_count == 0:
        return
    rows = keys.reshape(outer_count, -1)
    unique, inverse = np.unique(rows, axis=0, return_inverse=True)
    inverse = np.asarray(inverse).reshape(-1)

    cache: dict[int, InnerMask] = {}

    def inner_for(j: int) -> InnerMask:
        if j not in cache:
            if len(cache) > 256:
                cache.clear()
            cache[j] = evaluate(tuple(int(v) for v in unique[j]))
        return cache[j]

    counts = np.zeros(len(unique), dtype=np.int64)
    inner_size = 0
    for j in range(len(unique)):
        inner = inner_for(j)
        counts[j] = _inner_count(inner)
        inner_size = _inner_size(inner)
    per_outer = counts[inverse]
    total = int(per_outer.sum())

    def cells() -> Iterator[tuple[int, ...]]:
        for flat in np.flatnonzero(per_outer):
            outer = tuple(int(v) for v in np.unravel_index(int(flat), outer_shape))
            for inner_cell in _inner_cells(inner_for(int(inverse[flat]))):
                yield outer + inner_cell

    collector.add(axiom, violations=total, checked=outer_count * inner_size, cells=cells())
