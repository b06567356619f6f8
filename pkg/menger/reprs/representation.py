"""Representations of an algebra by partial n-place functions.

A representation is split into blocks. Each block owns a slice of the base
and gives every element a partial function on that slice; the function of
an element is the union of its block graphs. Blocks never share base points,
so superposition and difference act block by block.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Literal

import numpy as np

from menger.errors import BaseCollision, IndexOutOfRange, ShapeMismatch
from menger.kernel import CheckReport, SubtractionMengerAlgebra
from menger.kernel.algebra import IntTable
from menger.pfunc import UNDEFINED, PartialNFunction

logger = logging.getLogger(__name__)

PointKind = Literal["class", "selector", "point"]


@dataclass(frozen=True)
class BasePoint:
    """A point of the representation base.

    Points built from a determining pair are either an ε-class (``index`` is
    the class number) or a virtual selector (``index`` is 1-based). Points
    read back from a file keep only their name.
    """

    name: str
    kind: PointKind = "point"
    pair: tuple[int, int] | None = None
    index: int = 0

    def __str__(self) -> str:
        return self.name

    @classmethod
    def for_class(cls, pair_name: str, pair: tuple[int, int], k: int) -> BasePoint:
        return cls(f"{pair_name}/class#{k}", "class", pair, k)

    @classmethod
    def for_selector(cls, pair_name: str, pair: tuple[int, int], i: int) -> BasePoint:
        return cls(f"{pair_name}/e#{i}", "selector", pair, i)


def pair_name(labels: Sequence[str], pair: tuple[int, int]) -> str:
    a, b = pair
    return f"pair({labels[a]},{labels[b]})"


@dataclass(frozen=True, eq=False)
class RepresentationBlock:
    """Base points and, per element, a graph over them in local indices.

    ``graphs`` has shape ``(m,) + (len(points),) * n`` and holds local
    point indices or ``UNDEFINED``.
    """

    points: tuple[BasePoint, ...]
    graphs: IntTable

    def __post_init__(self) -> None:
        width = len(self.points)
        if self.graphs.ndim < 2 or any(d != width for d in self.graphs.shape[1:]):
            raise ShapeMismatch(
                f"block graphs of shape {self.graphs.shape} for {width} base points"
            )
        if self.graphs.size:
            high = int(self.graphs.max())
            if high >= width:
                raise IndexOutOfRange(high, width)

    @property
    def size(self) -> int:
        return len(self.points)

    @cached_property
    def flat(self) -> IntTable:
        """Graphs as rows over ``base^n`` in lexicographic order."""
        rows: IntTable = self.graphs.reshape(self.graphs.shape[0], -1)
        return rows


@dataclass(frozen=True, eq=False)
class Representation:
    """A map from the elements of ``algebra`` to partial functions on ``base``.

    ``provenance`` lists the determining pairs the blocks were built from;
    ``verified`` is set only from a passing :func:`verify_representation`.
    """

    algebra: SubtractionMengerAlgebra
    blocks: tuple[RepresentationBlock, ...]
    provenance: tuple[tuple[int, int], ...] = ()
    verified: bool = False
    report: CheckReport | None = None
    _offsets: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        m = self.algebra.size
        for block in self.blocks:
            if block.graphs.shape[0] != m:
                raise ShapeMismatch(
                    f"block has graphs for {block.graphs.shape[0]} elements, algebra has {m}"
                )
            if block.graphs.ndim - 1 != self.algebra.rank:
                raise ShapeMismatch(f"block graphs of rank {block.graphs.ndim - 1}")
        offsets = np.cumsum([0] + [block.size for block in self.blocks])
        object.__setattr__(self, "_offsets", tuple(int(v) for v in offsets))

    @cached_property
    def base(self) -> tuple[BasePoint, ...]:
        return tuple(point for block in self.blocks for point in block.points)

    @property
    def base_size(self) -> int:
        return self._offsets[-1]

    @property
    def rank(self) -> int:
        return self.algebra.rank

    def graph_tuples(self, g: int) -> Iterator[tuple[tuple[int, ...], int]]:
        """Defined ``(argument points, value point)`` of element ``g`` in base indices."""
        self.algebra.menger.check_index(g)
        for block, offset in zip(self.blocks, self._offsets, strict=False):
            local = block.graphs[g]
            for args in np.argwhere(local != UNDEFINED):
                point = tuple(int(v) + offset for v in args)
                yield point, int(local[tuple(args)]) + offset

    def function(self, g: int) -> PartialNFunction:
        """The function of ``g`` as a dense graph over the whole base."""
        mapping = dict(self.graph_tuples(g))
        return PartialNFunction.from_mapping(self.base_size, self.rank, mapping)

    def named_graphs(self) -> dict[str, set[tuple[str, ...]]]:
        """Per element label, the graph as ``(arg names.., value name)`` tuples."""
        names = [point.name for point in self.base]
        result = {}
        for g, label in enumerate(self.algebra.labels):
            result[label] = {
                tuple(names[v] for v in (*args, value)) for args, value in self.graph_tuples(g)
            }
        return result

    def same_graphs(self, other: Representation) -> bool:
        """Equal base names and equal labelled graphs, whatever the block split."""
        return (
            [p.name for p in self.base] == [p.name for p in other.base]
            and self.named_graphs() == other.named_graphs()
        )

    @classmethod
    def from_graphs(
        cls,
        algebra: SubtractionMengerAlgebra,
        base: Sequence[str],
        graphs: Mapping[int, Sequence[Sequence[int]]],
        provenance: Sequence[tuple[int, int]] = (),
    ) -> Representation:
        """Build from per-element tuples ``(arg_1, .., arg_n, value)`` of base indices.

        Points that occur in a common tuple share a block; each block is a
        contiguous range of ``base``.
        """
        n, size = algebra.rank, len(base)
        parent = list(range(size))

        def find(p: int) -> int:
            while parent[p] != p:
                parent[p] = parent[parent[p]]
                p = parent[p]
            return p

        for rows in graphs.values():
            for row in rows:
                if len(row) != n + 1:
                    raise ShapeMismatch(f"graph tuple {tuple(row)} is not of length {n + 1}")
                for p in row:
                    if not 0 <= p < size:
                        raise IndexOutOfRange(int(p), size)
                root = find(row[0])
                for p in row[1:]:
                    parent[find(p)] = root

        components: dict[int, list[int]] = {}
        for p in range(size):
            components.setdefault(find(p), []).append(p)
        # components whose index spans overlap share a block, so blocks stay
        # contiguous ranges of the base in file order
        spans: list[list[int]] = []
        for members in sorted(components.values(), key=min):
            low, high = min(members), max(members)
            if spans and low <= spans[-1][1]:
                spans[-1][1] = max(spans[-1][1], high)
            else:
                spans.append([low, high])

        blocks = []
        for low, high in spans:
            members = list(range(low, high + 1))
            local = {p: j for j, p in enumerate(members)}
            table = np.full((algebra.size,) + (len(members),) * n, UNDEFINED, dtype=np.intp)
            blocks.append(([BasePoint(base[p]) for p in members], local, table))
        where = {p: k for k, (_, local, _) in enumerate(blocks) for p in local}
        for g, rows in graphs.items():
            algebra.menger.check_index(g)
            for row in rows:
                _, local, table = blocks[where[row[0]]]
                cell = (g, *(local[p] for p in row[:-1]))
                if table[cell] not in (UNDEFINED, local[row[-1]]):
                    raise ShapeMismatch(f"element {g} has two values at {tuple(row[:-1])}")
                table[cell] = local[row[-1]]

        logger.debug("%d base points in %d blocks", size, len(blocks))
        return cls(
            algebra=algebra,
            blocks=tuple(
                RepresentationBlock(points=tuple(points), graphs=table)
                for points, _, table in blocks
            ),
            provenance=tuple(provenance),
        )


def sum_representations(
    parts: Sequence[Representation], algebra: SubtractionMengerAlgebra | None = None
) -> Representation:
    """The sum of a family: concatenated bases, united graphs.

    Raises:
        BaseCollision: two parts share a base point name.
    """
    if algebra is None:
        if not parts:
            raise ValueError("sum of no parts needs the algebra")
        algebra = parts[0].algebra
    seen: set[str] = set()
    blocks: list[RepresentationBlock] = []
    provenance: list[tuple[int, int]] = []
    for part in parts:
        if part.algebra != algebra:
            raise ShapeMismatch("summands represent different algebras")
        for point in part.base:
            if point.name in seen:
                raise BaseCollision(point.name)
            seen.add(point.name)
        blocks.extend(part.blocks)
        provenance.extend(part.provenance)
    return Representation(algebra=algebra, blocks=tuple(blocks), provenance=tuple(provenance))
