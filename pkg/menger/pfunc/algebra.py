"""Difference Menger algebras of partial n-place functions."""

from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import numpy.typing as npt

from menger.config import get_config
from menger.errors import ClosureCapExceeded, NotClosed, ShapeMismatch
from menger.kernel.algebra import SubtractionMengerAlgebra
from menger.kernel.scan import MAX_GRID_CELLS
from menger.pfunc.functions import UNDEFINED, PartialNFunction, all_graph_codes

logger = logging.getLogger(__name__)

Codes = npt.NDArray[np.intp]


def default_names(count: int, given: Sequence[str] = ()) -> tuple[str, ...]:
    names = list(given[:count])
    used = set(names)
    for i in range(len(names), count):
        name = f"f{i}"
        suffix = 0
        while name in used:
            suffix += 1
            name = f"f{i}_{suffix}"
        used.add(name)
        names.append(name)
    return tuple(names)


class _GraphIndex:
    """Maps graph rows to element indices.

    Rows are encoded as base-(k+1) integers when they fit in 62 bits and
    as raw bytes otherwise.
    """

    def __init__(self, base_size: int, width: int) -> None:
        radix = base_size + 1
        self._powers: npt.NDArray[np.int64] | None = None
        if width * np.log2(max(radix, 2)) < 62:
            self._powers = radix ** np.arange(width, dtype=np.int64)
        self._lookup: dict[int | bytes, int] = {}

    def keys(self, rows: Codes) -> list[int | bytes]:
        if self._powers is not None:
            encoded = (rows.astype(np.int64) + 1) @ self._powers
            return [int(v) for v in encoded]
        contiguous = np.ascontiguousarray(rows, dtype=np.intp)
        return [row.tobytes() for row in contiguous]

    def fresh(self, rows: Codes) -> list[tuple[Codes, int | bytes]]:
        """Rows not yet indexed, deduplicated, in order of first occurrence."""
        keys = self.keys(rows)
        if self._powers is None:
            found: dict[int | bytes, int] = {}
            for position, key in enumerate(keys):
                if key not in self._lookup:
                    found.setdefault(key, position)
            return [(rows[position], key) for key, position in found.items()]
        unique, first = np.unique(np.asarray(keys, dtype=np.int64), return_index=True)
        result = []
        for j in np.argsort(first, kind="stable"):
            key = int(unique[j])
            if key not in self._lookup:
                result.append((rows[first[j]], key))
        return result

    def add(self, key: int | bytes) -> int:
        index = len(self._lookup)
        self._lookup[key] = index
        return index

    def get(self, key: int | bytes) -> int | None:
        return self._lookup.get(key)

    def __contains__(self, key: int | bytes) -> bool:
        return key in self._lookup

    def __len__(self) -> int:
        return len(self._lookup)


def _inner_codes(matrix: Codes, base_size: int, rank: int) -> Codes:
    """Row t of the result holds, per input cell, the flat index of
    ``(g_1(a) .. g_n(a))`` for the t-th argument tuple, or ``width`` when
    some ``g_i(a)`` is undefined."""
    count, width = matrix.shape
    code = np.zeros((1,) * rank + (width,), dtype=np.intp)
    defined = np.ones((1,) * rank + (width,), dtype=np.bool_)
    for i in range(rank):
        column = matrix.reshape((1,) * i + (count,) + (1,) * (rank - 1 - i) + (width,))
        code = code * base_size + column
        defined = defined & (column != UNDEFINED)
    full = np.where(defined, code, width)
    return np.broadcast_to(full, (count,) * rank + (width,)).reshape(-1, width)


def _superposition_rows(matrix: Codes, base_size: int, rank: int) -> Iterator[tuple[int, Codes]]:
    """Yield ``(first head index, rows)`` blocks of all superpositions in (f, g-tuple) order."""
    count, width = matrix.shape
    inner = _inner_codes(matrix, base_size, rank)
    extended = np.concatenate([matrix, np.full((count, 1), UNDEFINED, dtype=np.intp)], axis=1)
    per_head = max(inner.size, 1)
    step = max(1, MAX_GRID_CELLS // per_head)
    for start in range(0, count, step):
        heads = extended[start : start + step]
        yield start, heads[:, inner].reshape(-1, width)


def _difference_rows(matrix: Codes) -> Codes:
    left = matrix[:, None, :]
    right = matrix[None, :, :]
    return np.where(left == right, UNDEFINED, left).reshape(-1, matrix.shape[1])


@dataclass(frozen=True, eq=False)
class FunctionAlgebra:
    """An indexed, duplicate-free family of partial functions with closure flags."""

    base_size: int
    rank: int
    elements: tuple[PartialNFunction, ...]
    names: tuple[str, ...] = ()
    closed_under_superposition: bool = False
    closed_under_difference: bool = False
    contains_empty: bool = False

    def __post_init__(self) -> None:
        seen: set[bytes] = set()
        for f in self.elements:
            if (f.base_size, f.rank) != (self.base_size, self.rank):
                raise ShapeMismatch(
                    f"function of base {f.base_size} rank {f.rank} in a family of "
                    f"base {self.base_size} rank {self.rank}"
                )
            if f.key in seen:
                raise ShapeMismatch("duplicate function in family")
            seen.add(f.key)
        names = default_names(len(self.elements), self.names)
        if len(set(names)) != len(names):
            raise ShapeMismatch("function names must be distinct")
        object.__setattr__(self, "names", names)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[PartialNFunction]:
        return iter(self.elements)

    def __getitem__(self, index: int) -> PartialNFunction:
        return self.elements[index]

    @property
    def is_closed(self) -> bool:
        return (
            self.closed_under_superposition
            and self.closed_under_difference
            and self.contains_empty
        )

    @property
    def width(self) -> int:
        return int(self.base_size**self.rank)

    @cached_property
    def matrix(self) -> Codes:
        if not self.elements:
            return np.zeros((0, self.width), dtype=np.intp)
        table = np.stack([f.codes for f in self.elements])
        table.setflags(write=False)
        return table

    @cached_property
    def _index(self) -> _GraphIndex:
        index = _GraphIndex(self.base_size, self.width)
        for key in index.keys(self.matrix):
            index.add(key)
        return index

    def index_of(self, f: PartialNFunction) -> int | None:
        return self._index.get(self._index.keys(f.codes[None, :])[0])

    def superposition_table(self) -> tuple[Codes, tuple[str, tuple[int, ...]] | None]:
        """Indices of every ``f[g_1..g_n]``, -1 where the result is not a member.

        Also returns the first escaping operand tuple, if any.
        """
        count = len(self)
        table = np.full(count ** (self.rank + 1), UNDEFINED, dtype=np.intp)
        escape: tuple[str, tuple[int, ...]] | None = None
        for start, rows in _superposition_rows(self.matrix, self.base_size, self.rank):
            for offset, key in enumerate(self._index.keys(rows)):
                found = self._index.get(key)
                position = start * count**self.rank + offset
                if found is None:
                    if escape is None:
                        operands = np.unravel_index(position, (count,) * (self.rank + 1))
                        escape = ("superposition", tuple(int(v) for v in operands))
                    continue
                table[position] = found
        return table.reshape((count,) * (self.rank + 1)), escape

    def difference_table(self) -> tuple[Codes, tuple[str, tuple[int, ...]] | None]:
        count = len(self)
        table = np.full(count * count, UNDEFINED, dtype=np.intp)
        escape: tuple[str, tuple[int, ...]] | None = None
        for position, key in enumerate(self._index.keys(_difference_rows(self.matrix))):
            found = self._index.get(key)
            if found is None:
                if escape is None:
                    escape = ("difference", (position // count, position % count))
                continue
            table[position] = found
        return table.reshape(count, count), escape

    @classmethod
    def of(
        cls,
        functions: Sequence[PartialNFunction],
        names: Sequence[str] = (),
        *,
        base_size: int | None = None,
        rank: int | None = None,
    ) -> FunctionAlgebra:
        """Wrap a family and decide its closure flags exactly."""
        base_size, rank = _shape_of(functions, base_size, rank)
        family = cls(base_size=base_size, rank=rank, elements=tuple(functions), names=tuple(names))
        _, super_escape = family.superposition_table()
        _, diff_escape = family.difference_table()
        empty = PartialNFunction.empty(base_size, rank)
        return cls(
            base_size=base_size,
            rank=rank,
            elements=family.elements,
            names=family.names,
            closed_under_superposition=super_escape is None,
            closed_under_difference=diff_escape is None,
            contains_empty=family.index_of(empty) is not None,
        )


def _shape_of(
    functions: Sequence[PartialNFunction], base_size: int | None, rank: int | None
) -> tuple[int, int]:
    if functions:
        first = functions[0]
        base_size = first.base_size if base_size is None else base_size
        rank = first.rank if rank is None else rank
    if base_size is None or rank is None:
        raise ShapeMismatch("base size and rank are required for an empty generator list")
    for f in functions:
        if (f.base_size, f.rank) != (base_size, rank):
            raise ShapeMismatch(
                f"generator of base {f.base_size} rank {f.rank}, expected base {base_size} rank {rank}"
            )
    return base_size, rank


def close(
    generators: Sequence[PartialNFunction],
    cap: int | None = None,
    *,
    base_size: int | None = None,
    rank: int | None = None,
    names: Sequence[str] = (),
) -> FunctionAlgebra:
    """Least family containing the generators and the empty function, closed under
    superposition and difference.

    Indices follow discovery order: generators, then the empty function,
    then per round the new superpositions followed by the new differences.

    Raises:
        ClosureCapExceeded: the family grew past ``cap`` elements.
    """
    if cap is None:
        cap = get_config().pfunc.closure_cap
    base_size, rank = _shape_of(generators, base_size, rank)
    width = base_size**rank
    index = _GraphIndex(base_size, width)
    rows: list[Codes] = []
    kept_names: list[str] = []

    def admit(row: Codes, key: int | bytes) -> None:
        index.add(key)
        rows.append(np.array(row, dtype=np.intp))
        if len(rows) > cap:
            raise ClosureCapExceeded(cap, "function closure")

    for position, f in enumerate(generators):
        key = index.keys(f.codes[None, :])[0]
        if key not in index:
            admit(f.codes, key)
            if position < len(names):
                kept_names.append(names[position])
    empty = np.full(width, UNDEFINED, dtype=np.intp)
    empty_key = index.keys(empty[None, :])[0]
    if empty_key not in index:
        admit(empty, empty_key)

    round_number = 0
    while True:
        round_number += 1
        matrix = np.stack(rows)
        before = len(rows)
        for _, block in _superposition_rows(matrix, base_size, rank):
            for row, key in index.fresh(block):
                admit(row, key)
        for row, key in index.fresh(_difference_rows(matrix)):
            admit(row, key)
        logger.debug(
            "function closure round %d: %d new, %d total",
            round_number,
            len(rows) - before,
            len(rows),
        )
        if len(rows) == before:
            break

    if len(rows) > 0.8 * cap:
        logger.warning("function closure of size %d is close to the cap %d", len(rows), cap)
    elements = tuple(PartialNFunction.from_codes(base_size, rank, row) for row in rows)
    return FunctionAlgebra(
        base_size=base_size,
        rank=rank,
        elements=elements,
        names=tuple(kept_names) if len(kept_names) == len(generators) else (),
        closed_under_superposition=True,
        closed_under_difference=True,
        contains_empty=True,
    )


def all_partial_functions(base_size: int, rank: int, cap: int | None = None) -> FunctionAlgebra:
    """Every partial map ``A^n -> A``, the empty function first.

    Raises:
        ClosureCapExceeded: ``(base_size + 1) ** (base_size ** rank)`` exceeds ``cap``.
    """
    if cap is None:
        cap = get_config().pfunc.closure_cap
    width = base_size**rank
    if (base_size + 1) ** width > cap:
        raise ClosureCapExceeded(cap, "full function set")
    elements = tuple(
        PartialNFunction.from_codes(base_size, rank, codes)
        for codes in all_graph_codes(base_size, rank)
    )
    return FunctionAlgebra(
        base_size=base_size,
        rank=rank,
        elements=elements,
        closed_under_superposition=True,
        closed_under_difference=True,
        contains_empty=True,
    )


def make_abstract(F: FunctionAlgebra) -> SubtractionMengerAlgebra:
    """Read off the operation tables of a closed family.

    Raises:
        NotClosed: naming the first operand tuple whose result is not a member.
    """
    empty = F.index_of(PartialNFunction.empty(F.base_size, F.rank))
    if empty is None:
        raise NotClosed("empty function", ())
    op, escape = F.superposition_table()
    if escape is not None:
        raise NotClosed(*escape)
    sub, escape = F.difference_table()
    if escape is not None:
        raise NotClosed(*escape)
    return SubtractionMengerAlgebra.from_tables(
        rank=F.rank, op=op, sub=sub, zero=empty, labels=F.names
    )


def random_closed_algebra(
    base_size: int,
    rank: int,
    generator_count: int | None = None,
    seed: int = 0,
    cap: int | None = None,
) -> FunctionAlgebra:
    """Close ``generator_count`` uniformly sampled partial functions.

    Deterministic in ``seed``.
    """
    if generator_count is None:
        generator_count = get_config().pfunc.random_generator_count
    rng = np.random.default_rng(seed)
    codes = rng.integers(UNDEFINED, base_size, size=(generator_count, base_size**rank))
    generators = [PartialNFunction.from_codes(base_size, rank, row) for row in codes]
    return close(generators, cap, base_size=base_size, rank=rank)
