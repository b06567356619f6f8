"""Identities that hold in every subtraction Menger algebra.

None of these are axioms. On a verified algebra every one of them holds,
so a failure points at an unverified input or a checker bug.
"""

from __future__ import annotations

from collections.abc import Callable

import numpy as np
import numpy.typing as npt

from menger.kernel.algebra import IntTable, SubtractionMengerAlgebra
from menger.kernel.report import CheckReport, WitnessCollector
from menger.kernel.scan import (
    SharedAxisProduct,
    grid_axes,
    scan_identity,
    scan_keyed,
    scan_per_element,
    scan_rows,
)
from menger.terms import ElementaryTranslations, TranslationSet, elementary_translations

Formula = Callable[..., npt.ArrayLike]


def subtraction_identities(
    sub: IntTable, meet: IntTable, leq: npt.NDArray[np.bool_], zero: int
) -> list[tuple[str, int, Formula]]:
    """Element-level consequences of the subtraction axioms as (name, arity, formula)."""
    D, M, L, Z = sub, meet, leq, zero
    return [
        ("self-difference", 1, lambda x: D[x, x] != Z),
        ("zero-right", 1, lambda x: D[x, Z] != x),
        ("zero-left", 1, lambda x: D[Z, x] != Z),
        ("difference-monotone", 3, lambda x, y, z: D[D[D[x, y], D[x, z]], D[z, y]] != Z),
        ("meet-below", 2, lambda x, y: D[D[x, D[x, y]], y] != Z),
        ("zero-least", 1, lambda x: ~L[Z, x]),
        ("difference-below", 2, lambda x, y: ~L[D[x, y], x]),
        ("meet-characterizes-order", 2, lambda x, y: L[x, y] != (D[x, D[x, y]] == x)),
        ("order-right-compatible", 3, lambda x, y, z: L[x, y] & ~L[D[x, z], D[y, z]]),
        ("order-left-antitone", 3, lambda x, y, z: L[x, y] & ~L[D[z, y], D[z, x]]),
        ("order-mixed", 4, lambda x, y, u, v: L[x, y] & L[u, v] & ~L[D[x, v], D[y, u]]),
        ("difference-idempotent", 2, lambda x, y: D[D[x, y], y] != D[x, y]),
        ("difference-distributes", 3, lambda x, y, z: D[D[x, y], z] != D[D[x, z], D[y, z]]),
        ("meet-order", 2, lambda x, y: L[x, y] != (M[x, y] == x)),
    ]


def meet_identities(
    sub: IntTable, meet: IntTable, leq: npt.NDArray[np.bool_], zero: int
) -> list[tuple[str, int, Formula]]:
    """Laws of the meet ``x - (x - y)`` against subtraction and the order."""
    D, M, L, Z = sub, meet, leq, zero
    return [
        ("meet-glb", 3, lambda x, y, z: L[x, y] & L[x, z] & ~L[x, M[y, z]]),
        ("meet-monotone", 3, lambda x, y, z: L[x, y] & ~L[M[x, z], M[y, z]]),
        ("disjoint-difference", 2, lambda x, y: (M[x, y] == Z) & (D[x, y] != x)),
        ("difference-disjoint", 2, lambda x, y: M[D[x, y], y] != Z),
        ("meet-difference", 3, lambda x, y, z: M[x, D[y, z]] != D[M[x, y], M[x, z]]),
        ("difference-via-meet", 2, lambda x, y: D[x, y] != D[x, M[x, y]]),
        ("meet-difference-triple", 3, lambda x, y, z: D[M[x, y], D[y, z]] != M[M[x, y], z]),
        ("meet-difference-split", 3, lambda x, y, z: D[M[x, y], z] != M[D[x, z], D[y, z]]),
        ("meet-difference-left", 3, lambda x, y, z: D[M[x, y], z] != M[D[x, z], y]),
    ]


def scan_element_identities(
    collector: WitnessCollector, size: int, identities: list[tuple[str, int, Formula]]
) -> None:
    for name, arity, formula in identities:
        scan_identity(collector, name, size, arity, formula)


def _menger_identities(
    collector: WitnessCollector, S: SubtractionMengerAlgebra, elementary: ElementaryTranslations
) -> None:
    n, op, D, M, Z = S.rank, S.op, S.sub, S.meet, S.zero
    scan_identity(collector, "menger-zero-head", S.size, n, lambda *ys: op[(Z, *ys)] != Z)
    scan_rows(
        collector,
        "menger-zero-argument",
        elementary.vectors,
        elementary.provenance,
        lambda block: block[:, Z] != Z,
    )
    scan_rows(
        collector,
        "translation-meet-form",
        elementary.vectors,
        elementary.provenance,
        lambda block: block[:, M] != D[block[:, :, None], block[:, D]],
    )

    def meet_distributes(x: npt.ArrayLike, y: npt.ArrayLike, *zs: npt.ArrayLike) -> npt.ArrayLike:
        return op[(M[x, y], *zs)] != M[op[(x, *zs)], op[(y, *zs)]]

    scan_identity(collector, "meet-right-distributivity", S.size, n + 2, meet_distributes)


def _polynomial_identities(
    collector: WitnessCollector, S: SubtractionMengerAlgebra, T: TranslationSet
) -> None:
    D, M, L, Z, m = S.sub, S.meet, S.leq, S.zero, S.size
    Tf = T.functions
    TT = Tf.T

    # unary polynomial identities in (x, y, t) order
    scan_per_element(
        collector,
        "polynomial-meet",
        m,
        lambda x: TT[M[x]] != D[TT[x][None, :], TT[D[x]]],
    )
    scan_per_element(
        collector,
        "polynomial-difference",
        m,
        lambda x: TT[D[x]] != D[TT[x][None, :], TT[M[x]]],
    )
    scan_per_element(
        collector,
        "polynomial-subadditive",
        m,
        lambda x: ~L[D[TT[x][None, :], TT], TT[D[x]]],
    )

    x, y = grid_axes(m, 2)
    pair_keys = np.stack(np.broadcast_arrays(M[x, y], D[x, y]), axis=-1)
    scan_keyed(
        collector,
        "polynomial-separation",
        pair_keys,
        (m, m),
        lambda key: M[Tf[:, key[0]][:, None], Tf[:, key[1]][None, :]] != Z,
    )

    swap_keys = np.stack(np.broadcast_arrays(M[x, y], y), axis=-1)

    def meet_swap(key: tuple[int, ...]) -> npt.NDArray[np.bool_]:
        q, b = key
        left = Tf[:, q][:, None]
        return M[left, Tf[:, b][None, :]] != M[left, Tf[:, q][None, :]]

    scan_keyed(collector, "polynomial-meet-swap", swap_keys, (m, m), meet_swap)

    x3, y3, z3 = grid_axes(m, 3)
    q3 = M[x3, y3]
    p3 = M[q3, z3]
    r3 = M[y3, z3]
    triple_keys = np.stack(np.broadcast_arrays(p3, y3, q3, r3), axis=-1)

    def meet_sides(key: tuple[int, ...]) -> tuple[IntTable, IntTable]:
        p, b, q, r = key
        lhs = M[Tf[:, p][:, None], Tf[:, b][None, :]]
        rhs = M[Tf[:, q][:, None], Tf[:, r][None, :]]
        return lhs, rhs

    def meet_bound(key: tuple[int, ...]) -> npt.NDArray[np.bool_]:
        lhs, rhs = meet_sides(key)
        return ~L[lhs, rhs]

    def meet_equality(key: tuple[int, ...]) -> npt.NDArray[np.bool_]:
        lhs, rhs = meet_sides(key)
        return lhs != rhs

    scan_keyed(collector, "polynomial-meet-bound", triple_keys, (m, m, m), meet_bound)

    # below[g, t, v] = g <= t(v)
    below = L[:, Tf]
    transfer_keys = np.stack(np.broadcast_arrays(q3, r3, p3), axis=-1)

    def meet_transfer(key: tuple[int, ...]) -> SharedAxisProduct:
        q, r, p = key
        return SharedAxisProduct(
            left=below[:, :, q],
            right=below[:, :, r] & ~below[:, :, p],
        )

    scan_keyed(collector, "polynomial-meet-transfer", transfer_keys, (m, m, m), meet_transfer)
    scan_keyed(collector, "polynomial-meet-equality", triple_keys, (m, m, m), meet_equality)


def check_derived_identities(
    S: SubtractionMengerAlgebra,
    T: TranslationSet,
    *,
    max_witnesses: int | None = None,
) -> CheckReport:
    """Scan every derived identity; each witness names the identity it breaks."""
    T.check_matches(S.menger)
    collector = WitnessCollector(max_witnesses)
    scan_element_identities(
        collector, S.size, subtraction_identities(S.sub, S.meet, S.leq, S.zero)
    )
    scan_element_identities(collector, S.size, meet_identities(S.sub, S.meet, S.leq, S.zero))
    _menger_identities(collector, S, elementary_translations(S.menger))
    _polynomial_identities(collector, S, T)
    return collector.report()


def scan_translation_meet(
    collector: WitnessCollector, S: SubtractionMengerAlgebra, elementary: ElementaryTranslations
) -> None:
    D = S.sub
    scan_rows(
        collector,
        "translation-meet",
        elementary.vectors,
        elementary.provenance,
        lambda block: block[:, D[np.arange(S.size)[:, None], D]]
        != D[block[:, :, None], block[:, D]],
    )


def check_prop4_equivalences(
    S: SubtractionMengerAlgebra,
    T: TranslationSet,
    *,
    max_witnesses: int | None = None,
) -> CheckReport:
    """Decide four formulations of meet preservation and check they agree.

    The formulations are ``translation-meet`` over elementary translations,
    ``translation-difference-ordered``, ``polynomial-difference-ordered`` and
    ``polynomial-meet-difference``. ``evaluations`` holds each truth value;
    the report fails only when they disagree.
    """
    T.check_matches(S.menger)
    D, L, m = S.sub, S.leq, S.size
    elementary = elementary_translations(S.menger)
    TT = T.functions.T
    truths: dict[str, bool] = {}
    checked = 0

    def evaluate(name: str, scan: Callable[[WitnessCollector], None]) -> None:
        nonlocal checked
        quiet = WitnessCollector(0)
        scan(quiet)
        report = quiet.report()
        truths[name] = report.holds
        checked += report.checked_count

    evaluate("translation-meet", lambda c: scan_translation_meet(c, S, elementary))
    evaluate(
        "translation-difference-ordered",
        lambda c: scan_rows(
            c,
            "translation-difference-ordered",
            elementary.vectors,
            elementary.provenance,
            lambda block: L[None] & (block[:, D.T] != D[block[:, None, :], block[:, :, None]]),
        ),
    )
    evaluate(
        "polynomial-difference-ordered",
        lambda c: scan_per_element(
            c,
            "polynomial-difference-ordered",
            m,
            lambda x: L[x][:, None] & (TT[D[:, x]] != D[TT, TT[x][None, :]]),
        ),
    )
    evaluate(
        "polynomial-meet-difference",
        lambda c: scan_per_element(
            c,
            "polynomial-meet-difference",
            m,
            lambda x: TT[D[x, D[x]]] != D[TT[x][None, :], TT[D[x]]],
        ),
    )

    collector = WitnessCollector(max_witnesses)
    agree = len(set(truths.values())) <= 1
    collector.add(
        "meet-preservation-equivalence",
        violations=0 if agree else 1,
        checked=checked,
        cells=[tuple(int(v) for v in truths.values())],
    )
    report = collector.report()
    report.evaluations = truths
    return report
