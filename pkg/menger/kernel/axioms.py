"""Axiom checkers and the verified-algebra wrapper."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from menger.errors import AxiomViolation
from menger.kernel.algebra import FiniteMengerAlgebra, SubtractionMengerAlgebra
from menger.kernel.derived import scan_translation_meet
from menger.kernel.report import CheckReport, WitnessCollector
from menger.kernel.scan import SharedAxisProduct, grid_axes, scan_identity, scan_keyed
from menger.terms import TranslationSet, elementary_translations, translations

logger = logging.getLogger(__name__)


def check_superassociativity(
    M: FiniteMengerAlgebra, *, max_witnesses: int | None = None
) -> CheckReport:
    """``x[y_1..y_n][z_1..z_n] = x[y_1[z_1..z_n] .. y_n[z_1..z_n]]``.

    Witnesses are ``(x, y_1..y_n, z_1..z_n)``.
    """
    n, op = M.rank, M.op

    def violated(x: npt.ArrayLike, *rest: npt.ArrayLike) -> npt.ArrayLike:
        ys, zs = rest[:n], rest[n:]
        lhs = op[(op[(x, *ys)], *zs)]
        rhs = op[(x, *(op[(y, *zs)] for y in ys))]
        return lhs != rhs

    collector = WitnessCollector(max_witnesses)
    scan_identity(collector, "superassociativity", M.size, 2 * n + 1, violated)
    return collector.report()


def check_subtraction_axioms(
    S: SubtractionMengerAlgebra, *, max_witnesses: int | None = None
) -> CheckReport:
    D, Z = S.sub, S.zero
    collector = WitnessCollector(max_witnesses)
    scan_identity(collector, "absorption", S.size, 2, lambda x, y: D[x, D[y, x]] != x)
    scan_identity(
        collector, "meet-symmetry", S.size, 2, lambda x, y: D[x, D[x, y]] != D[y, D[y, x]]
    )
    scan_identity(
        collector, "exchange", S.size, 3, lambda x, y, z: D[D[x, y], z] != D[D[x, z], y]
    )
    scan_identity(collector, "zero-idempotent", S.size, 0, lambda: D[Z, Z] != Z)
    return collector.report()


def check_compat_axioms(
    S: SubtractionMengerAlgebra,
    T: TranslationSet,
    *,
    max_witnesses: int | None = None,
) -> CheckReport:
    """Compatibility of subtraction with the Menger operation.

    ``translation-meet`` witnesses are ``(u, w_1..w_n, i, x, y)`` with the
    slot ``w_i`` reported as 0; ``order-transfer`` witnesses are
    ``(x, y, z, t1, t2)`` with translation indices into ``T``.
    """
    T.check_matches(S.menger)
    n, op, D, L, m = S.rank, S.op, S.sub, S.leq, S.size
    collector = WitnessCollector(max_witnesses)

    def distributes(x: npt.ArrayLike, y: npt.ArrayLike, *zs: npt.ArrayLike) -> npt.ArrayLike:
        return op[(D[x, y], *zs)] != D[op[(x, *zs)], op[(y, *zs)]]

    scan_identity(collector, "right-distributivity", m, n + 2, distributes)
    scan_translation_meet(collector, S, elementary_translations(S.menger))

    # below[z, t, v] = z <= t(v)
    below = L[:, T.functions]
    x, y = grid_axes(m, 2)
    keys = np.stack(np.broadcast_arrays(x, y), axis=-1)

    def transfer(key: tuple[int, ...]) -> SharedAxisProduct:
        a, b = key
        right = below[:, :, b] & ~below[:, :, a]
        if not L[a, b]:
            right = np.zeros_like(right)
        return SharedAxisProduct(left=below[:, :, a], right=right)

    scan_keyed(collector, "order-transfer", keys, (m, m), transfer)
    return collector.report()


def check_omega_order(
    S: SubtractionMengerAlgebra, *, max_witnesses: int | None = None
) -> CheckReport:
    """Partial-order laws of ``x <= y iff x - y = 0``."""
    L = S.leq
    collector = WitnessCollector(max_witnesses)
    scan_identity(collector, "order-reflexive", S.size, 1, lambda x: ~L[x, x])
    scan_identity(
        collector,
        "order-antisymmetric",
        S.size,
        2,
        lambda x, y: L[x, y] & L[y, x] & (x != y),
    )
    scan_identity(
        collector,
        "order-transitive",
        S.size,
        3,
        lambda x, y, z: L[x, y] & L[y, z] & ~L[x, z],
    )
    return collector.report()


@dataclass(frozen=True, eq=False)
class VerifiedAlgebra:
    """An algebra that passed every axiom check, with the translations used."""

    algebra: SubtractionMengerAlgebra
    translations: TranslationSet
    report: CheckReport

    @property
    def size(self) -> int:
        return self.algebra.size

    @property
    def rank(self) -> int:
        return self.algebra.rank


def check_axioms(
    S: SubtractionMengerAlgebra,
    T: TranslationSet,
    *,
    max_witnesses: int | None = None,
) -> CheckReport:
    return CheckReport.merge(
        [
            check_superassociativity(S.menger, max_witnesses=max_witnesses),
            check_subtraction_axioms(S, max_witnesses=max_witnesses),
            check_compat_axioms(S, T, max_witnesses=max_witnesses),
        ]
    )


def verify_algebra(
    S: SubtractionMengerAlgebra,
    translation_set: TranslationSet | None = None,
    *,
    max_witnesses: int | None = None,
) -> VerifiedAlgebra:
    """Run every axiom check and wrap the algebra when all of them hold.

    Raises:
        AxiomViolation: carrying the merged report when any axiom fails.
        ClosureCapExceeded: when the translation set cannot be computed.
    """
    if translation_set is None:
        translation_set = translations(S.menger)
    translation_set.check_matches(S.menger)
    report = check_axioms(S, translation_set, max_witnesses=max_witnesses)
    if not report.holds:
        logger.debug("verification failed: %s", sorted(report.failed_axioms()))
        raise AxiomViolation(report)
    logger.debug(
        "verified algebra of size %d with %d translations", S.size, len(translation_set)
    )
    return VerifiedAlgebra(algebra=S, translations=translation_set, report=report)
