"""Finite carriers and their operation tables.

Elements are 0-based indices into the carrier; labels are carried only for
input and output.
"""

from __future__ import annotations

import hashlib
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np
import numpy.typing as npt

from menger.errors import IndexOutOfRange, ShapeMismatch

IntTable = npt.NDArray[np.intp]
BoolTable = npt.NDArray[np.bool_]


def _frozen_table(values: npt.ArrayLike, dtype: type = np.intp) -> npt.NDArray[np.generic]:
    table = np.array(values, dtype=dtype, copy=True)
    table.setflags(write=False)
    return table


def _check_range(table: IntTable, size: int) -> None:
    if table.size == 0:
        return
    low, high = int(table.min()), int(table.max())
    if low < 0:
        raise IndexOutOfRange(low, size)
    if high >= size:
        raise IndexOutOfRange(high, size)


def _default_labels(size: int, labels: Sequence[str]) -> tuple[str, ...]:
    if not labels:
        return tuple(str(i) for i in range(size))
    if len(labels) != size:
        raise ShapeMismatch(f"{len(labels)} labels for a carrier of size {size}")
    if len(set(labels)) != size:
        raise ShapeMismatch("carrier labels must be distinct")
    return tuple(labels)


@dataclass(frozen=True, eq=False)
class FiniteMengerAlgebra:
    """A carrier of m elements with a total (n+1)-ary operation table.

    ``op[x, y_1, ..., y_n]`` is the index of ``x[y_1 ... y_n]``.
    Superassociativity is checked by the kernel, never assumed.
    """

    rank: int
    op: IntTable
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ShapeMismatch(f"rank must be positive, got {self.rank}")
        table = _frozen_table(self.op)
        if table.ndim != self.rank + 1:
            raise ShapeMismatch(
                f"rank {self.rank} needs a table with {self.rank + 1} axes, got {table.ndim}"
            )
        size = table.shape[0]
        if size < 1 or any(dim != size for dim in table.shape):
            raise ShapeMismatch(f"operation table is not total: shape {table.shape}")
        _check_range(table, size)
        object.__setattr__(self, "op", table)
        object.__setattr__(self, "labels", _default_labels(size, self.labels))

    @property
    def size(self) -> int:
        return int(self.op.shape[0])

    @cached_property
    def fingerprint(self) -> str:
        """Digest of the rank and the table; labels do not participate."""
        digest = hashlib.sha256()
        digest.update(f"{self.rank}:{self.size}:".encode())
        digest.update(np.ascontiguousarray(self.op, dtype=np.int64).tobytes())
        return digest.hexdigest()

    def __call__(self, x: int, *ys: int) -> int:
        if len(ys) != self.rank:
            raise ShapeMismatch(f"expected {self.rank} arguments, got {len(ys)}")
        for value in (x, *ys):
            self.check_index(value)
        return int(self.op[(x, *ys)])

    def check_index(self, value: int) -> None:
        if not 0 <= value < self.size:
            raise IndexOutOfRange(value, self.size)

    def index_of(self, label: str) -> int:
        return self.labels.index(label)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteMengerAlgebra):
            return NotImplemented
        return (
            self.rank == other.rank
            and self.labels == other.labels
            and np.array_equal(self.op, other.op)
        )

    def __hash__(self) -> int:
        return hash(self.fingerprint)

    @classmethod
    def from_function(
        cls,
        rank: int,
        size: int,
        fn: Callable[..., int],
        labels: Sequence[str] = (),
    ) -> FiniteMengerAlgebra:
        """Tabulate ``fn(x, y_1, ..., y_n)`` over the whole carrier."""
        table = np.empty((size,) * (rank + 1), dtype=np.intp)
        for args in product(range(size), repeat=rank + 1):
            table[args] = fn(*args)
        return cls(rank=rank, op=table, labels=tuple(labels))


@dataclass(frozen=True, eq=False)
class SubtractionMengerAlgebra:
    """A Menger algebra with a binary subtraction table and a zero element."""

    menger: FiniteMengerAlgebra
    sub: IntTable
    zero: int

    def __post_init__(self) -> None:
        table = _frozen_table(self.sub)
        size = self.menger.size
        if table.shape != (size, size):
            raise ShapeMismatch(f"subtraction table must be {size}x{size}, got {table.shape}")
        _check_range(table, size)
        self.menger.check_index(self.zero)
        object.__setattr__(self, "sub", table)

    @property
    def size(self) -> int:
        return self.menger.size

    @property
    def rank(self) -> int:
        return self.menger.rank

    @property
    def op(self) -> IntTable:
        return self.menger.op

    @property
    def labels(self) -> tuple[str, ...]:
        return self.menger.labels

    @cached_property
    def meet(self) -> IntTable:
        """``x ⋏ y = x - (x - y)`` for all pairs."""
        x = np.arange(self.size)[:, None]
        table: IntTable = self.sub[x, self.sub]
        table.setflags(write=False)
        return table

    @cached_property
    def leq(self) -> BoolTable:
        """``x <= y`` iff ``x - y = 0``."""
        table: BoolTable = self.sub == self.zero
        table.setflags(write=False)
        return table

    def subtract(self, x: int, y: int) -> int:
        self.menger.check_index(x)
        self.menger.check_index(y)
        return int(self.sub[x, y])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubtractionMengerAlgebra):
            return NotImplemented
        return (
            self.menger == other.menger
            and self.zero == other.zero
            and np.array_equal(self.sub, other.sub)
        )

    def __hash__(self) -> int:
        return hash((self.menger.fingerprint, self.zero, self.sub.tobytes()))

    @classmethod
    def from_tables(
        cls,
        rank: int,
        op: npt.ArrayLike,
        sub: npt.ArrayLike,
        zero: int,
        labels: Sequence[str] = (),
    ) -> SubtractionMengerAlgebra:
        menger = FiniteMengerAlgebra(rank=rank, op=np.asarray(op), labels=tuple(labels))
        return cls(menger=menger, sub=np.asarray(sub), zero=zero)


@dataclass(frozen=True, eq=False)
class BinaryRelation:
    """A relation on a carrier of m elements as an m×m membership matrix."""

    bits: BoolTable
    _pairs: IntTable = field(init=False, repr=False)

    def __post_init__(self) -> None:
        matrix = _frozen_table(self.bits, dtype=np.bool_)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ShapeMismatch(f"relation matrix must be square, got {matrix.shape}")
        object.__setattr__(self, "bits", matrix)
        pairs = np.argwhere(matrix).astype(np.intp)
        pairs.setflags(write=False)
        object.__setattr__(self, "_pairs", pairs)

    @property
    def size(self) -> int:
        return int(self.bits.shape[0])

    @property
    def pairs(self) -> IntTable:
        """Member pairs as a (k, 2) array in lexicographic order."""
        return self._pairs

    def __contains__(self, pair: object) -> bool:
        if not isinstance(pair, tuple) or len(pair) != 2:
            return False
        x, y = pair
        return bool(self.bits[x, y])

    def __len__(self) -> int:
        return int(self._pairs.shape[0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryRelation):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)

    def __hash__(self) -> int:
        return hash(self.bits.tobytes())

    def is_reflexive(self) -> bool:
        return bool(np.diagonal(self.bits).all())

    def is_symmetric(self) -> bool:
        return bool((self.bits == self.bits.T).all())

    def is_antisymmetric(self) -> bool:
        both = self.bits & self.bits.T
        np.fill_diagonal(both, False)
        return not bool(both.any())

    def is_transitive(self) -> bool:
        square = (self.bits.astype(np.int64) @ self.bits.astype(np.int64)) > 0
        return not bool((square & ~self.bits).any())

    def is_quasiorder(self) -> bool:
        return self.is_reflexive() and self.is_transitive()

    def is_equivalence(self) -> bool:
        return self.is_quasiorder() and self.is_symmetric()

    def classes(self) -> list[frozenset[int]]:
        """Classes of an equivalence, ordered by least member."""
        seen: set[int] = set()
        result: list[frozenset[int]] = []
        for x in range(self.size):
            if x in seen:
                continue
            members = frozenset(int(y) for y in np.flatnonzero(self.bits[x]))
            seen |= members
            result.append(members)
        return result

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[tuple[int, int]]) -> BinaryRelation:
        bits = np.zeros((size, size), dtype=np.bool_)
        for x, y in pairs:
            if not (0 <= x < size and 0 <= y < size):
                raise IndexOutOfRange(max(x, y), size)
            bits[x, y] = True
        return cls(bits=bits)

    @classmethod
    def full(cls, size: int) -> BinaryRelation:
        return cls(bits=np.ones((size, size), dtype=np.bool_))

    @classmethod
    def diagonal(cls, size: int) -> BinaryRelation:
        return cls(bits=np.eye(size, dtype=np.bool_))
