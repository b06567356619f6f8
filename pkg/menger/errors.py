"""Exception types raised by the Menger toolkit.

Axiom checkers never raise for violated axioms; they return reports. The
exceptions below signal malformed input, refused computations (caps), or
broken internal invariants.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from menger.kernel.report import CheckReport


class MengerError(Exception):
    """Base class for all toolkit errors."""


@dataclass(eq=False)
class IndexOutOfRange(MengerError):
    """An element index falls outside the carrier."""

    value: int
    size: int

    def __str__(self) -> str:
        return f"index {self.value} outside carrier of size {self.size}"


@dataclass(eq=False)
class ShapeMismatch(MengerError):
    """Operands or tables have incompatible shapes."""

    detail: str

    def __str__(self) -> str:
        return self.detail


@dataclass(eq=False)
class ClosureCapExceeded(MengerError):
    """A fixpoint closure grew past its configured cap."""

    cap: int
    what: str = "closure"

    def __str__(self) -> str:
        return f"{self.what} exceeded cap of {self.cap}"


@dataclass(eq=False)
class TranslationMismatch(MengerError):
    """A translation set was computed for a different operation table."""

    expected: str
    actual: str

    def __str__(self) -> str:
        return f"translation set built for {self.actual[:12]}, algebra is {self.expected[:12]}"


@dataclass(eq=False)
class NotClosed(MengerError):
    """A function set escapes itself under an operation."""

    operation: str
    operands: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.operation} of {self.operands} is not a member"


@dataclass(eq=False)
class NotAnOrder(MengerError):
    """The relation x - y = 0 is not a partial order."""

    law: str
    witness: tuple[int, ...]

    def __str__(self) -> str:
        return f"induced relation is not {self.law}: {self.witness}"


@dataclass(eq=False)
class NotSeparable(MengerError):
    """No filter contains a while excluding b, since a <= b."""

    a: int
    b: int

    def __str__(self) -> str:
        return f"{self.a} <= {self.b}, no filter separates them"


@dataclass(eq=False)
class DeterminingPairViolation(MengerError):
    """A determining pair failed one of its required properties."""

    property: str
    pair: tuple[int, int]
    detail: str = ""

    def __str__(self) -> str:
        suffix = f" ({self.detail})" if self.detail else ""
        return f"pair {self.pair}: {self.property} fails{suffix}"


@dataclass(eq=False)
class ImageSplitsClasses(MengerError):
    """The image of a class tuple meets more than one class."""

    element: int
    class_tuple: tuple[int, ...]

    def __str__(self) -> str:
        return f"image of {self.class_tuple} under {self.element} splits classes"


@dataclass(eq=False)
class BaseCollision(MengerError):
    """Two summands share a base point."""

    point: str

    def __str__(self) -> str:
        return f"base point {self.point!r} occurs in more than one summand"


@dataclass(eq=False)
class FaithfulnessFailure(MengerError):
    """Two distinct elements received the same function."""

    pair: tuple[int, int]
    report: CheckReport | None = None

    def __str__(self) -> str:
        return f"representation identifies elements {self.pair}"


@dataclass(eq=False)
class AxiomViolation(MengerError):
    """An algebra failed the checks required for verified status."""

    report: CheckReport

    def __str__(self) -> str:
        failed = ", ".join(sorted(self.report.failed_axioms()))
        return f"axioms violated: {failed}"


@dataclass(eq=False)
class FileFormatError(MengerError):
    """An input file does not match its schema."""

    path: Path | str
    location: str
    message: str

    def __str__(self) -> str:
        where = f" at {self.location}" if self.location else ""
        return f"{self.path}{where}: {self.message}"


def format_tuple(values: Sequence[Any]) -> str:
    """Render an index tuple for diagnostics."""
    return "(" + ", ".join(str(v) for v in values) + ")"
