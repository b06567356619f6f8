"""Check reports and the witness collector shared by every checker."""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from itertools import islice
from typing import Any

import numpy as np
import numpy.typing as npt

from menger.config import get_config

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Witness:
    """One violating substitution for a named axiom."""

    axiom: str
    substitution: tuple[int, ...]

    def to_dict(self) -> dict[str, Any]:
        return {"axiom": self.axiom, "substitution": list(self.substitution)}


@dataclass
class CheckReport:
    """Outcome of an exhaustive quantifier scan.

    ``violations`` counts every failing substitution per axiom, so ``holds``
    stays exact when the witness list is truncated.
    """

    witnesses: list[Witness] = field(default_factory=list)
    checked_count: int = 0
    violations: dict[str, int] = field(default_factory=dict)
    evaluations: dict[str, bool] = field(default_factory=dict)
    complete: bool = True

    @property
    def holds(self) -> bool:
        return self.complete and not any(self.violations.values())

    @property
    def axioms(self) -> list[str]:
        return list(self.violations)

    def failed_axioms(self) -> set[str]:
        return {axiom for axiom, count in self.violations.items() if count}

    def witnesses_for(self, axiom: str) -> list[Witness]:
        return [w for w in self.witnesses if w.axiom == axiom]

    def to_dict(self) -> dict[str, Any]:
        return {
            "holds": self.holds,
            "checked_count": self.checked_count,
            "violations": dict(self.violations),
            "evaluations": dict(self.evaluations),
            "witnesses": [w.to_dict() for w in self.witnesses],
        }

    @classmethod
    def merge(cls, reports: Iterable[CheckReport]) -> CheckReport:
        merged = cls()
        for report in reports:
            merged.witnesses.extend(report.witnesses)
            merged.checked_count += report.checked_count
            for axiom, count in report.violations.items():
                merged.violations[axiom] = merged.violations.get(axiom, 0) + count
            merged.evaluations.update(report.evaluations)
            merged.complete = merged.complete and report.complete
        return merged


class WitnessCollector:
    """Accumulates violation counts and the first witnesses of each axiom.

    Callers feed substitutions in lexicographic order; the collector keeps
    at most ``max_witnesses`` of them per axiom.
    """

    def __init__(self, max_witnesses: int | None = None) -> None:
        if max_witnesses is None:
            max_witnesses = get_config().checks.max_witnesses
        self.max_witnesses = max_witnesses
        self._witnesses: dict[str, list[Witness]] = {}
        self._violations: dict[str, int] = {}
        self._checked = 0

    def declare(self, axiom: str) -> None:
        self._violations.setdefault(axiom, 0)
        self._witnesses.setdefault(axiom, [])

    def room(self, axiom: str) -> int:
        return max(self.max_witnesses - len(self._witnesses.get(axiom, [])), 0)

    def add(
        self,
        axiom: str,
        *,
        violations: int,
        checked: int,
        cells: Iterable[Sequence[int]] = (),
    ) -> None:
        """Record a scanned block of ``checked`` substitutions.

        ``cells`` is consumed lazily and only up to the remaining witness room.
        """
        self.declare(axiom)
        self._checked += checked
        if violations <= 0:
            return
        self._violations[axiom] += violations
        room = self.room(axiom)
        if room:
            for cell in islice(cells, room):
                self._witnesses[axiom].append(
                    Witness(axiom, tuple(int(v) for v in cell))
                )

    def scan(
        self,
        axiom: str,
        mask: npt.NDArray[np.bool_],
        prefix: Sequence[int] = (),
        expand: Callable[[tuple[int, ...]], Sequence[int]] | None = None,
    ) -> None:
        """Record a dense violation mask whose axes follow the substitution order.

        ``prefix`` holds already-fixed leading variables; ``expand`` rewrites
        an index tuple into the reported substitution.
        """
        count = int(np.count_nonzero(mask))
        self.add(
            axiom,
            violations=count,
            checked=int(mask.size),
            cells=_mask_cells(mask, tuple(prefix), expand) if count else (),
        )

    def report(self) -> CheckReport:
        witnesses: list[Witness] = []
        for axiom, found in self._witnesses.items():
            witnesses.extend(found)
            dropped = self._violations[axiom] - len(found)
            if dropped > 0:
                logger.debug("%s: %d further witnesses not kept", axiom, dropped)
        return CheckReport(
            witnesses=witnesses,
            checked_count=self._checked,
            violations=dict(self._violations),
        )


def _mask_cells(
    mask: npt.NDArray[np.bool_],
    prefix: tuple[int, ...],
    expand: Callable[[tuple[int, ...]], Sequence[int]] | None,
) -> Iterator[tuple[int, ...]]:
    if mask.ndim == 0:
        yield tuple(expand(prefix)) if expand is not None else prefix
        return
    for flat in np.flatnonzero(mask):
        index = tuple(int(v) for v in np.unravel_index(int(flat), mask.shape))
        cell = prefix + index
        yield tuple(expand(cell)) if expand is not None else cell
