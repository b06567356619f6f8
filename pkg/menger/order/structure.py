"""The induced order, its meet and the bounded join."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import numpy.typing as npt

from menger.errors import NotAnOrder
from menger.kernel import (
    BinaryRelation,
    CheckReport,
    SubtractionMengerAlgebra,
    WitnessCollector,
    check_omega_order,
)
from menger.kernel.algebra import BoolTable, IntTable
from menger.kernel.derived import meet_identities, scan_element_identities
from menger.kernel.scan import scan_identity, scan_per_element, scan_rows
from menger.terms import TranslationSet, elementary_translations

logger = logging.getLogger(__name__)

UNDEFINED = -1


@dataclass(frozen=True, eq=False)
class OrderStructure:
    """``x <= y iff x - y = 0`` with meet and join tables.

    ``join[x, y]`` is ``UNDEFINED`` when x and y have no common upper bound.
    """

    algebra: SubtractionMengerAlgebra
    leq: BinaryRelation
    meet: IntTable
    join: IntTable

    @property
    def size(self) -> int:
        return self.algebra.size

    @property
    def zero(self) -> int:
        return self.algebra.zero

    @cached_property
    def join_defined(self) -> BoolTable:
        defined: BoolTable = self.join != UNDEFINED
        return defined

    @cached_property
    def bounded_pairs(self) -> BoolTable:
        """Pairs with a common upper bound."""
        bits = self.leq.bits.astype(np.int64)
        bounded: BoolTable = (bits @ bits.T) > 0
        return bounded

    @cached_property
    def bounded_triples(self) -> BoolTable:
        bits = self.leq.bits.astype(np.int64)
        bounded: BoolTable = np.einsum("xa,ya,za->xyz", bits, bits, bits) > 0
        return bounded

    def upper_bounds(self, x: int, y: int) -> list[int]:
        both = self.leq.bits[x] & self.leq.bits[y]
        return [int(a) for a in np.flatnonzero(both)]


def bounded_join(sub: IntTable, meet: IntTable, x: npt.ArrayLike, y: npt.ArrayLike, a: npt.ArrayLike) -> IntTable:
    """``a - ((a - x) ⋏ (a - y))``."""
    result: IntTable = sub[a, meet[sub[a, x], sub[a, y]]]
    return result


def build_order(S: SubtractionMengerAlgebra) -> OrderStructure:
    """Build the order, meet and join tables of a verified algebra.

    The join of x and y is evaluated at their least-index common upper bound.

    Raises:
        NotAnOrder: the relation fails reflexivity, antisymmetry or transitivity.
    """
    report = check_omega_order(S, max_witnesses=1)
    if not report.holds:
        witness = report.witnesses[0]
        raise NotAnOrder(witness.axiom.removeprefix("order-"), witness.substitution)

    m, L = S.size, S.leq
    join = np.full((m, m), UNDEFINED, dtype=np.intp)
    ys = np.arange(m)
    for x in range(m):
        common = L[x][None, :] & L
        has_bound = common.any(axis=1)
        bound = common.argmax(axis=1)
        values = bounded_join(S.sub, S.meet, x, ys, bound)
        join[x] = np.where(has_bound, values, UNDEFINED)
    join.setflags(write=False)
    logger.debug(
        "order on %d elements: %d comparable pairs, %d undefined joins",
        m,
        int(np.count_nonzero(L)),
        int(np.count_nonzero(join == UNDEFINED)),
    )
    return OrderStructure(
        algebra=S,
        leq=BinaryRelation(bits=L),
        meet=S.meet,
        join=join,
    )


def check_join_wellposed(O: OrderStructure, *, max_witnesses: int | None = None) -> CheckReport:
    """The bounded join agrees for every pair of common upper bounds.

    Witnesses are ``(x, y, a, b)`` with a and b both upper bounds.
    """
    S, L = O.algebra, O.leq.bits
    D, M = S.sub, S.meet
    a = np.arange(O.size)
    collector = WitnessCollector(max_witnesses)

    def disagrees(x: np.intp) -> npt.NDArray[np.bool_]:
        # rows are y, columns are the bound a
        values = D[a[None, :], M[D[:, x][None, :], D.T]]
        bounded = L[x][None, :] & L
        both = bounded[:, :, None] & bounded[:, None, :]
        return both & (values[:, :, None] != values[:, None, :])

    scan_per_element(collector, "join-bound-independence", O.size, disagrees)
    return collector.report()


class _Extended:
    """Tables over the carrier plus one absorbing ``undefined`` element at index m."""

    def __init__(self, O: OrderStructure) -> None:
        S = O.algebra
        m = O.size
        self.undefined = m
        self.sub = self._extend(S.sub, m)
        self.meet = self._extend(O.meet, m)
        join = np.where(O.join == UNDEFINED, m, O.join)
        self.join = self._extend(join, m)
        self.op = self._extend(S.op, m)
        leq = np.zeros((m + 1, m + 1), dtype=np.bool_)
        leq[:m, :m] = O.leq.bits
        self.leq = leq
        self.defined = np.zeros((m + 1, m + 1), dtype=np.bool_)
        self.defined[:m, :m] = O.join_defined

    @staticmethod
    def _extend(table: IntTable, m: int) -> IntTable:
        extended = np.full(tuple(d + 1 for d in table.shape), m, dtype=np.intp)
        extended[tuple(slice(0, d) for d in table.shape)] = table
        return extended

    def rows(self, table: IntTable) -> IntTable:
        """Append the absorbing column to a family of maps."""
        extra = np.full((table.shape[0], 1), self.undefined, dtype=np.intp)
        return np.concatenate([table, extra], axis=1)


def check_join_identities(
    O: OrderStructure,
    translation_set: TranslationSet | None = None,
    *,
    max_witnesses: int | None = None,
) -> CheckReport:
    """Lattice laws of the join, each scanned where the joins involved exist.

    With ``translation_set`` the preservation of joins by every translation
    is checked too.
    """
    S = O.algebra
    m, n, Z = O.size, S.rank, O.zero
    X = _Extended(O)
    D, M, J, L, op = X.sub, X.meet, X.join, X.leq, X.op
    B2, B3 = O.bounded_pairs, O.bounded_triples
    collector = WitnessCollector(max_witnesses)

    element_laws = [
        ("join-idempotent", 1, lambda x: J[x, x] != x),
        ("join-zero", 1, lambda x: J[x, Z] != x),
        ("join-commutative", 2, lambda x, y: B2[x, y] & (J[x, y] != J[y, x])),
        ("join-upper-bound", 2, lambda x, y: B2[x, y] & ~(L[x, J[x, y]] & L[y, J[x, y]])),
        ("join-absorption-meet", 2, lambda x, y: B2[x, y] & (M[x, J[x, y]] != x)),
        ("meet-absorption-join", 2, lambda x, y: B2[x, y] & (J[x, M[x, y]] != x)),
        (
            "join-associative",
            3,
            lambda x, y, z: B3[x, y, z] & (J[J[x, y], z] != J[x, J[y, z]]),
        ),
        (
            "meet-distributes-join",
            3,
            lambda x, y, z: B3[x, y, z] & (M[x, J[y, z]] != J[M[x, y], M[x, z]]),
        ),
        (
            "join-distributes-meet",
            3,
            lambda x, y, z: B3[x, y, z] & (J[x, M[y, z]] != M[J[x, y], J[x, z]]),
        ),
        (
            "difference-distributes-join",
            3,
            lambda x, y, z: B3[x, y, z] & (D[J[x, y], z] != J[D[x, z], D[y, z]]),
        ),
        ("join-least", 3, lambda x, y, z: L[x, z] & L[y, z] & ~L[J[x, y], z]),
        ("join-difference-restore", 2, lambda x, y: L[y, x] & (J[D[x, y], y] != x)),
        ("join-difference-recover", 2, lambda x, y: B2[x, y] & (D[J[x, y], D[y, x]] != x)),
        ("meet-difference-join", 2, lambda x, y: B2[x, y] & (J[M[x, y], D[x, y]] != x)),
    ]
    scan_element_identities(collector, m, element_laws)

    defined = X.defined

    def exists_after_menger(x: npt.ArrayLike, y: npt.ArrayLike, *zs: npt.ArrayLike) -> npt.ArrayLike:
        return defined[x, y] & ~defined[op[(x, *zs)], op[(y, *zs)]]

    def menger_distributes(x: npt.ArrayLike, y: npt.ArrayLike, *zs: npt.ArrayLike) -> npt.ArrayLike:
        return defined[x, y] & (op[(J[x, y], *zs)] != J[op[(x, *zs)], op[(y, *zs)]])

    scan_identity(collector, "join-existence-menger", m, n + 2, exists_after_menger)
    scan_identity(collector, "join-right-distributivity", m, n + 2, menger_distributes)

    elementary = elementary_translations(S.menger)
    rows = X.rows(elementary.vectors)
    base = np.arange(m)
    Jm = J[:m, :m]
    scan_rows(
        collector,
        "join-existence-translation",
        rows,
        elementary.provenance,
        lambda block: defined[None, :m, :m]
        & ~defined[block[:, base][:, :, None], block[:, base][:, None, :]],
    )
    scan_rows(
        collector,
        "translation-join",
        rows,
        elementary.provenance,
        lambda block: defined[None, :m, :m]
        & (block[:, Jm] != J[block[:, base][:, :, None], block[:, base][:, None, :]]),
    )

    if translation_set is not None:
        translation_set.check_matches(S.menger)
        TT = X.rows(translation_set.functions).T

        def polynomial_join(x: np.intp) -> npt.NDArray[np.bool_]:
            tx = TT[x][None, :]
            ty = TT[:m]
            broken = (TT[Jm[x]] != J[tx, ty]) | ~defined[tx, ty]
            result: npt.NDArray[np.bool_] = defined[x, :m][:, None] & broken
            return result

        scan_per_element(collector, "polynomial-join", m, polynomial_join)

    return collector.report()


def check_meet_laws(O: OrderStructure, *, max_witnesses: int | None = None) -> CheckReport:
    """Semilattice laws of the meet table and its interaction with subtraction."""
    S = O.algebra
    D, M, L, Z = S.sub, O.meet, O.leq.bits, O.zero
    collector = WitnessCollector(max_witnesses)
    laws = [
        ("meet-table", 2, lambda x, y: M[x, y] != D[x, D[x, y]]),
        ("meet-idempotent", 1, lambda x: M[x, x] != x),
        ("meet-commutative", 2, lambda x, y: M[x, y] != M[y, x]),
        ("meet-associative", 3, lambda x, y, z: M[M[x, y], z] != M[x, M[y, z]]),
        ("meet-lower-bound", 2, lambda x, y: ~(L[M[x, y], x] & L[M[x, y], y])),
    ]
    scan_element_identities(collector, O.size, laws)
    scan_element_identities(collector, O.size, meet_identities(D, M, L, Z))
    return collector.report()
