"""Exhaustive verification of a representation.

Checked axioms, in report order:

- ``homomorphism``: ``P(x[y_1..y_n]) = P(x)[P(y_1)..P(y_n)]``, witness ``(x, y_1..y_n)``
- ``subtraction-law``: ``P(x - y) = P(x) \\ P(y)``, witness ``(x, y)``
- ``zero-empty``: ``P(0)`` is the empty function, witness ``(0,)``
- ``injectivity``: ``P(x) != P(y)``, witness ``(x, y)`` with ``x < y``
"""

from __future__ import annotations

import logging

import numpy as np
import numpy.typing as npt

from menger.errors import ShapeMismatch
from menger.kernel import CheckReport, SubtractionMengerAlgebra, WitnessCollector
from menger.kernel.algebra import IntTable
from menger.pfunc import UNDEFINED
from menger.reprs.representation import Representation, RepresentationBlock

logger = logging.getLogger(__name__)

BoolArray = npt.NDArray[np.bool_]


def distinct_blocks(R: Representation) -> list[RepresentationBlock]:
    """Blocks with pairwise different graph tables, in first-occurrence order."""
    by_identity: dict[int, RepresentationBlock] = {}
    for block in R.blocks:
        by_identity.setdefault(id(block.graphs), block)
    by_content: dict[tuple[tuple[int, ...], bytes], RepresentationBlock] = {}
    for block in by_identity.values():
        by_content.setdefault((block.graphs.shape, block.graphs.tobytes()), block)
    return list(by_content.values())


def _homomorphism_mask(S: SubtractionMengerAlgebra, block: RepresentationBlock) -> BoolArray:
    m, n, width = S.size, S.rank, block.size
    flat = block.flat
    rows, row_of = np.unique(flat, axis=0, return_inverse=True)
    row_of = row_of.reshape(-1)
    known = {row.tobytes(): j for j, row in enumerate(rows)}

    # code of the argument point tuple for every (y_1..y_n) and base cell
    ys = np.indices((m,) * n).reshape(n, -1)
    inner = flat[ys]
    code = np.zeros(inner.shape[1:], dtype=np.intp)
    for i in range(n):
        code = code * width + np.where(inner[i] == UNDEFINED, 0, inner[i])
    code = np.where((inner != UNDEFINED).all(axis=0), code, UNDEFINED)
    codes, code_of = np.unique(code, axis=0, return_inverse=True)
    code_of = code_of.reshape(-1)

    # column -1 reads the appended undefined cell
    padded = np.concatenate([rows, np.full((len(rows), 1), UNDEFINED, dtype=np.intp)], axis=1)
    result_row = np.full((len(rows), len(codes)), -1, dtype=np.intp)
    for r in range(len(rows)):
        composed = padded[r][codes]
        result_row[r] = [known.get(c.tobytes(), -1) for c in composed]

    actual = result_row[row_of][:, code_of]
    expected = row_of[S.op.reshape(m, -1)]
    mask: BoolArray = (actual != expected).reshape((m,) * (n + 1))
    return mask


def _subtraction_mask(S: SubtractionMengerAlgebra, block: RepresentationBlock) -> BoolArray:
    flat = block.flat
    mask = np.zeros((S.size, S.size), dtype=np.bool_)
    for x in range(S.size):
        difference = np.where(flat[x][None, :] == flat, UNDEFINED, flat[x][None, :])
        mask[x] = (flat[S.sub[x]] != difference).any(axis=1)
    return mask


def _injectivity_mask(S: SubtractionMengerAlgebra, blocks: list[RepresentationBlock]) -> BoolArray:
    m = S.size
    keys: IntTable = np.concatenate(
        [block.flat for block in blocks] or [np.zeros((m, 0), dtype=np.intp)], axis=1
    )
    if keys.shape[1]:
        _, class_of = np.unique(keys, axis=0, return_inverse=True)
        class_of = class_of.reshape(-1)
    else:
        class_of = np.zeros(m, dtype=np.intp)
    same = class_of[:, None] == class_of[None, :]
    mask: BoolArray = same & np.triu(np.ones((m, m), dtype=np.bool_), k=1)
    return mask


def verify_representation(
    S: SubtractionMengerAlgebra, R: Representation, *, max_witnesses: int | None = None
) -> CheckReport:
    """Check that ``R`` preserves superposition, difference and zero and is injective.

    Blocks partition the base, so the homomorphism laws are checked per
    distinct block and the masks combined.
    """
    if R.algebra.size != S.size or R.rank != S.rank:
        raise ShapeMismatch(
            f"representation of an algebra of size {R.algebra.size} and rank {R.rank}, "
            f"expected size {S.size} and rank {S.rank}"
        )
    m, n = S.size, S.rank
    blocks = distinct_blocks(R)
    homomorphism = np.zeros((m,) * (n + 1), dtype=np.bool_)
    subtraction = np.zeros((m, m), dtype=np.bool_)
    zero = False
    for block in blocks:
        homomorphism |= _homomorphism_mask(S, block)
        subtraction |= _subtraction_mask(S, block)
        zero = zero or bool((block.flat[S.zero] != UNDEFINED).any())

    collector = WitnessCollector(max_witnesses)
    collector.scan("homomorphism", homomorphism)
    collector.scan("subtraction-law", subtraction)
    collector.scan("zero-empty", np.array(zero), prefix=(S.zero,))
    collector.scan("injectivity", _injectivity_mask(S, blocks))
    report = collector.report()
    logger.debug(
        "verified %d distinct blocks of %d: %s",
        len(blocks),
        len(R.blocks),
        "holds" if report.holds else f"fails {sorted(report.failed_axioms())}",
    )
    return report
