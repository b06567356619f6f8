"""Elementary translations and the finite monoid of induced unary maps."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING

import numpy as np

from menger.config import get_config
from menger.errors import ClosureCapExceeded, TranslationMismatch
from menger.terms.term import VARIABLE, Node, Term

if TYPE_CHECKING:
    from menger.kernel.algebra import FiniteMengerAlgebra, IntTable

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ElementaryTranslations:
    """Every map ``x -> u[w|_i x]`` of an algebra.

    ``vectors[r]`` is the map as an m-vector and ``provenance[r]`` is
    ``(u, w_1, .., w_n, i)`` with ``i`` 1-based and ``w_i`` recorded as 0.
    Rows are sorted by provenance.
    """

    vectors: IntTable
    provenance: IntTable

    def __len__(self) -> int:
        return int(self.vectors.shape[0])

    @property
    def rank(self) -> int:
        return int(self.provenance.shape[1]) - 2

    def at_position(self, i: int) -> IntTable:
        """Rows whose variable sits at argument position ``i``."""
        return self.vectors[self.provenance[:, -1] == i]

    @cached_property
    def distinct(self) -> tuple[IntTable, IntTable]:
        """Distinct vectors and the first provenance row of each, in provenance order."""
        _, first = np.unique(self.vectors, axis=0, return_index=True)
        first = np.sort(first)
        return self.vectors[first], first


def elementary_translations(M: FiniteMengerAlgebra) -> ElementaryTranslations:
    n, m = M.rank, M.size
    vectors = []
    provenance = []
    for i in range(1, n + 1):
        # move the varying argument to the last axis: rows are (u, other w's)
        moved = np.moveaxis(M.op, i, -1).reshape(-1, m)
        others = np.indices((m,) * n).reshape(n, -1).T
        prov = np.zeros((others.shape[0], n + 2), dtype=np.intp)
        prov[:, 0] = others[:, 0]
        slots = [k for k in range(1, n + 1) if k != i]
        for column, slot in enumerate(slots, start=1):
            prov[:, slot] = others[:, column]
        prov[:, -1] = i
        vectors.append(moved)
        provenance.append(prov)
    stacked = np.concatenate(vectors).astype(np.intp)
    prov_all = np.concatenate(provenance)
    order = np.lexsort(tuple(prov_all[:, c] for c in reversed(range(n + 2))))
    result_vectors = np.ascontiguousarray(stacked[order])
    result_prov = np.ascontiguousarray(prov_all[order])
    result_vectors.setflags(write=False)
    result_prov.setflags(write=False)
    return ElementaryTranslations(vectors=result_vectors, provenance=result_prov)


@dataclass(frozen=True, eq=False)
class TranslationSet:
    """Closure of the identity under post-composition with elementary translations.

    ``functions[0]`` is the identity. For k > 0, ``functions[k]`` is the
    elementary translation ``steps[k]`` applied after ``functions[parents[k]]``.
    """

    fingerprint: str
    rank: int
    functions: IntTable
    parents: IntTable
    steps: IntTable
    _index: dict[bytes, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        index = {row.tobytes(): k for k, row in enumerate(self.functions)}
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return int(self.functions.shape[0])

    @property
    def size(self) -> int:
        return len(self)

    def index_of(self, vector: IntTable | tuple[int, ...]) -> int | None:
        row = np.asarray(vector, dtype=self.functions.dtype)
        return self._index.get(row.tobytes())

    def as_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(tuple(int(v) for v in row) for row in self.functions)

    def check_matches(self, M: FiniteMengerAlgebra) -> None:
        if M.fingerprint != self.fingerprint:
            raise TranslationMismatch(expected=M.fingerprint, actual=self.fingerprint)

    def generator_witness(self, k: int) -> Term:
        """A term inducing ``functions[k]``."""
        if not 0 <= k < len(self):
            raise IndexError(k)
        chain: list[int] = []
        while k > 0:
            chain.append(k)
            k = int(self.parents[k])
        term: Term = VARIABLE
        for step in reversed(chain):
            prov = self.steps[step]
            head, i = int(prov[0]), int(prov[-1])
            coefficients = tuple(
                int(prov[slot]) for slot in range(1, self.rank + 1) if slot != i
            )
            term = Node(head, i, coefficients, term)
        return term


def translations(M: FiniteMengerAlgebra, *, cap: int | None = None) -> TranslationSet:
    """Fixpoint closure of ``{identity}`` under the elementary translations.

    Raises:
        ClosureCapExceeded: more than ``cap`` distinct maps were generated.
    """
    if cap is None:
        cap = get_config().terms.closure_cap
    m, n = M.size, M.rank
    elementary = elementary_translations(M)
    generators, first = elementary.distinct
    generator_prov = elementary.provenance[first]

    identity = np.arange(m, dtype=np.intp)
    functions: list[IntTable] = [identity]
    parents: list[int] = [-1]
    steps: list[IntTable] = [np.zeros(n + 2, dtype=np.intp)]
    known: dict[bytes, int] = {identity.tobytes(): 0}
    frontier = [0]
    round_number = 0

    while frontier:
        round_number += 1
        current = np.stack([functions[k] for k in frontier])
        # composed[j, e] is generator e applied after frontier function j
        composed = generators[:, current].transpose(1, 0, 2)
        next_frontier: list[int] = []
        for j, parent in enumerate(frontier):
            for e, row in enumerate(composed[j]):
                key = row.tobytes()
                if key in known:
                    continue
                known[key] = len(functions)
                next_frontier.append(len(functions))
                functions.append(np.array(row, dtype=np.intp))
                parents.append(parent)
                steps.append(generator_prov[e])
                if len(functions) > cap:
                    raise ClosureCapExceeded(cap, "translation set")
        logger.debug(
            "translation closure round %d: %d new, %d total",
            round_number,
            len(next_frontier),
            len(functions),
        )
        frontier = next_frontier

    if len(functions) > 0.8 * cap:
        logger.warning("translation set of size %d is close to the cap %d", len(functions), cap)

    table = np.stack(functions)
    parent_array = np.array(parents, dtype=np.intp)
    step_array = np.stack(steps)
    for array in (table, parent_array, step_array):
        array.setflags(write=False)
    return TranslationSet(
        fingerprint=M.fingerprint,
        rank=n,
        functions=table,
        parents=parent_array,
        steps=step_array,
    )


def translations_by_depth(M: FiniteMengerAlgebra, depth_limit: int) -> frozenset[tuple[int, ...]]:
    """Maps induced by the terms of depth at most ``depth_limit``.

    Layer d holds the maps of depth-d terms, which are exactly the
    elementary translations applied after the maps of layer d-1.
    """
    if depth_limit < 0:
        raise ValueError(f"depth_limit must be non-negative, got {depth_limit}")
    generators, _ = elementary_translations(M).distinct
    layer = np.arange(M.size, dtype=np.intp)[None, :]
    seen = {tuple(int(v) for v in layer[0])}
    for _ in range(depth_limit):
        composed = generators[:, layer].reshape(-1, M.size)
        layer = np.unique(composed, axis=0)
        seen.update(tuple(int(v) for v in row) for row in layer)
    return frozenset(seen)


def oracle_depth(M: FiniteMengerAlgebra, depth_limit: int | None = None) -> int | None:
    """The first depth d whose term maps equal those of depth d+1.

    Returns ``None`` when the maps still grow at ``depth_limit``, which
    defaults to ``terms.oracle_depth_limit``. From the returned depth on,
    term enumeration yields exactly the translation set.
    """
    if depth_limit is None:
        depth_limit = get_config().terms.oracle_depth_limit
    previous = translations_by_depth(M, 0)
    for depth in range(1, depth_limit + 1):
        current = translations_by_depth(M, depth)
        if current == previous:
            return depth - 1
        previous = current
    logger.debug("term maps still growing at depth %d (%d maps)", depth_limit, len(previous))
    return None
