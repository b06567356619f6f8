"""Partial n-place functions on a finite base set.

A function is a dense table over ``A^n`` whose cells hold an element of
``A`` or ``UNDEFINED``.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np
import numpy.typing as npt

from menger.errors import IndexOutOfRange, ShapeMismatch

UNDEFINED = -1

Graph = npt.NDArray[np.intp]


@dataclass(frozen=True, eq=False)
class PartialNFunction:
    """A partial map ``A^n -> A`` with ``|A| = base_size``."""

    base_size: int
    rank: int
    graph: Graph

    def __post_init__(self) -> None:
        if self.base_size < 0 or self.rank < 1:
            raise ShapeMismatch(f"bad shape: base size {self.base_size}, rank {self.rank}")
        table = np.array(self.graph, dtype=np.intp, copy=True)
        expected = (self.base_size,) * self.rank
        if table.shape != expected:
            raise ShapeMismatch(f"graph shape {table.shape}, expected {expected}")
        if table.size:
            low, high = int(table.min()), int(table.max())
            if low < UNDEFINED:
                raise IndexOutOfRange(low, self.base_size)
            if high >= self.base_size:
                raise IndexOutOfRange(high, self.base_size)
        table.setflags(write=False)
        object.__setattr__(self, "graph", table)

    @cached_property
    def codes(self) -> Graph:
        """The graph flattened over ``A^n`` in lexicographic order of inputs."""
        flat: Graph = self.graph.reshape(-1)
        return flat

    @cached_property
    def key(self) -> bytes:
        return self.codes.tobytes()

    def __call__(self, *args: int) -> int | None:
        if len(args) != self.rank:
            raise ShapeMismatch(f"expected {self.rank} arguments, got {len(args)}")
        for value in args:
            if not 0 <= value < self.base_size:
                raise IndexOutOfRange(value, self.base_size)
        value = int(self.graph[args])
        return None if value == UNDEFINED else value

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartialNFunction):
            return NotImplemented
        return (
            self.base_size == other.base_size
            and self.rank == other.rank
            and np.array_equal(self.graph, other.graph)
        )

    def __hash__(self) -> int:
        return hash((self.base_size, self.rank, self.key))

    def __repr__(self) -> str:
        body = ", ".join(
            f"{args[0] if self.rank == 1 else args}->{value}" for args, value in self.items()
        )
        return f"PartialNFunction({{{body}}})"

    @property
    def is_empty(self) -> bool:
        return not bool((self.graph != UNDEFINED).any())

    @property
    def domain_size(self) -> int:
        return int(np.count_nonzero(self.graph != UNDEFINED))

    def items(self) -> Iterator[tuple[tuple[int, ...], int]]:
        """Defined ``(input tuple, output)`` pairs in lexicographic order."""
        for index in np.argwhere(self.graph != UNDEFINED):
            args = tuple(int(v) for v in index)
            yield args, int(self.graph[args])

    @classmethod
    def from_mapping(
        cls, base_size: int, rank: int, mapping: Mapping[tuple[int, ...] | int, int]
    ) -> PartialNFunction:
        """Build from ``{input tuple: output}``; rank-1 inputs may be bare ints."""
        graph = np.full((base_size,) * rank, UNDEFINED, dtype=np.intp)
        for args, value in mapping.items():
            point = (args,) if isinstance(args, int) else tuple(args)
            if len(point) != rank:
                raise ShapeMismatch(f"input {point} has {len(point)} coordinates, rank is {rank}")
            for coordinate in (*point, value):
                if not 0 <= coordinate < base_size:
                    raise IndexOutOfRange(coordinate, base_size)
            graph[point] = value
        return cls(base_size=base_size, rank=rank, graph=graph)

    @classmethod
    def empty(cls, base_size: int, rank: int) -> PartialNFunction:
        return cls(
            base_size=base_size,
            rank=rank,
            graph=np.full((base_size,) * rank, UNDEFINED, dtype=np.intp),
        )

    @classmethod
    def from_codes(cls, base_size: int, rank: int, codes: npt.ArrayLike) -> PartialNFunction:
        graph = np.asarray(codes, dtype=np.intp).reshape((base_size,) * rank)
        return cls(base_size=base_size, rank=rank, graph=graph)


def selector(base_size: int, rank: int, i: int) -> PartialNFunction:
    """The total i-th projection ``(a_1..a_n) -> a_i`` (1-based)."""
    if not 1 <= i <= rank:
        raise ShapeMismatch(f"selector index {i} outside 1..{rank}")
    graph = np.indices((base_size,) * rank)[i - 1]
    return PartialNFunction(base_size=base_size, rank=rank, graph=graph)


def _check_shapes(functions: tuple[PartialNFunction, ...]) -> None:
    first = functions[0]
    for other in functions[1:]:
        if (other.base_size, other.rank) != (first.base_size, first.rank):
            raise ShapeMismatch(
                f"operands disagree: base {first.base_size} rank {first.rank} "
                f"vs base {other.base_size} rank {other.rank}"
            )


def superpose(f: PartialNFunction, *gs: PartialNFunction) -> PartialNFunction:
    """``f[g_1 .. g_n]``: defined at ``a`` when every ``g_i(a)`` and ``f`` there are."""
    if len(gs) != f.rank:
        raise ShapeMismatch(f"superposition of rank {f.rank} needs {f.rank} arguments")
    _check_shapes((f, *gs))
    inner = np.stack([g.graph for g in gs])
    defined = (inner != UNDEFINED).all(axis=0)
    # out-of-domain cells read a harmless index and are masked afterwards
    safe = np.where(inner == UNDEFINED, 0, inner)
    if f.base_size == 0:
        return PartialNFunction.empty(0, f.rank)
    values = f.graph[tuple(safe)]
    result = np.where(defined, values, UNDEFINED)
    return PartialNFunction(base_size=f.base_size, rank=f.rank, graph=result)


def difference(f: PartialNFunction, g: PartialNFunction) -> PartialNFunction:
    """Graph difference ``f \\ g``."""
    _check_shapes((f, g))
    result = np.where(f.graph == g.graph, UNDEFINED, f.graph)
    return PartialNFunction(base_size=f.base_size, rank=f.rank, graph=result)


def all_graph_codes(base_size: int, rank: int) -> Iterator[tuple[int, ...]]:
    """Every graph in lexicographic order of cells, the empty graph first."""
    return product(range(UNDEFINED, base_size), repeat=base_size**rank)
