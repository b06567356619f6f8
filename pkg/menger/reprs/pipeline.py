"""Faithful representation by the sum of all simplest representations."""

from __future__ import annotations

import logging
from dataclasses import replace

from menger.config import TieBreak
from menger.errors import FaithfulnessFailure
from menger.kernel import CheckReport, SubtractionMengerAlgebra, VerifiedAlgebra, verify_algebra
from menger.kernel.algebra import IntTable
from menger.order import build_order, determining_pairs
from menger.reprs.representation import Representation, sum_representations
from menger.reprs.simplest import simplest_block, simplest_graphs
from menger.reprs.verify import verify_representation

logger = logging.getLogger(__name__)


def theorem2_pipeline(
    S: SubtractionMengerAlgebra | VerifiedAlgebra,
    tiebreak: TieBreak | None = None,
    *,
    max_witnesses: int | None = None,
) -> Representation:
    """Represent ``S`` faithfully by partial n-place functions.

    One simplest representation is built per pair ``(a, b)`` with ``a`` not
    below ``b``, the family is summed and the sum verified.

    Raises:
        AxiomViolation: ``S`` is not a verified algebra.
        ClosureCapExceeded: the translation set is too large.
        FaithfulnessFailure: two elements received the same function.
    """
    verified = S if isinstance(S, VerifiedAlgebra) else verify_algebra(S)
    algebra, T = verified.algebra, verified.translations
    order = build_order(algebra)
    pairs = determining_pairs(order, T, tiebreak)

    graphs_by_filter: dict[int, IntTable] = {}
    parts = []
    for D in pairs:
        graphs = graphs_by_filter.get(D.filter.generator)
        if graphs is None:
            graphs = simplest_graphs(algebra, D)
            graphs_by_filter[D.filter.generator] = graphs
        parts.append(
            Representation(
                algebra=algebra,
                blocks=(simplest_block(algebra, D, graphs),),
                provenance=(D.pair,),
            )
        )
    R = sum_representations(parts, algebra=algebra)

    bound = len(pairs) * (algebra.size + algebra.rank)
    if R.base_size > bound:
        raise AssertionError(f"base of {R.base_size} points exceeds {bound}")

    report = verify_representation(algebra, R, max_witnesses=max_witnesses)
    logger.info(
        "represented %d elements over %d base points from %d pairs (%d distinct filters)",
        algebra.size,
        R.base_size,
        len(pairs),
        len(graphs_by_filter),
    )
    collisions = report.witnesses_for("injectivity")
    if collisions:
        x, y = collisions[0].substitution
        raise FaithfulnessFailure((x, y), report)
    if not report.holds:
        logger.error("representation fails %s", ", ".join(sorted(report.failed_axioms())))
    return replace(R, verified=report.holds, report=report)


def tiebreak_robustness(
    S: SubtractionMengerAlgebra | VerifiedAlgebra,
    strategy: TieBreak,
    *,
    max_witnesses: int | None = None,
) -> CheckReport:
    """Verification report of the pipeline run with ``strategy`` for filter generators."""
    try:
        R = theorem2_pipeline(S, strategy, max_witnesses=max_witnesses)
    except FaithfulnessFailure as exc:
        if exc.report is None:
            raise
        return exc.report
    assert R.report is not None
    return R.report
