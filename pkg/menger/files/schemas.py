"""Pydantic models for the on-disk file formats.

Files name elements and base points by label; indices are assigned on load
in file order.
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, field_validator

# === Algebra ===


class AlgebraFile(BaseModel):
    """Operation tables of a finite (subtraction) Menger algebra.

    ``menger`` rows are ``[x, y_1, .., y_n, result]`` and ``subtraction``
    rows are ``[x, y, result]``; every input occurs exactly once.
    """

    model_config = ConfigDict(extra="forbid")

    rank: int = Field(..., ge=1, description="Number of arguments n")
    carrier: list[str] = Field(..., min_length=1)
    menger: list[list[str]]
    subtraction: list[list[str]] | None = None
    zero: str | None = None

    @field_validator("carrier")
    @classmethod
    def distinct_labels(cls, value: list[str]) -> list[str]:
        duplicates = sorted({label for label in value if value.count(label) > 1})
        if duplicates:
            raise ValueError(f"duplicate labels {duplicates}")
        return value


# === Function sets ===


class FunctionEntry(BaseModel):
    """One named partial function; rows are ``[a_1, .., a_n, value]``."""

    model_config = ConfigDict(extra="forbid")

    name: str
    graph: list[list[str]] = Field(default_factory=list)


class FunctionSetFile(BaseModel):
    """A family of partial n-place functions on a labelled base set.

    Inputs missing from a graph are undefined.
    """

    model_config = ConfigDict(extra="forbid")

    base: list[str]
    rank: int = Field(..., ge=1)
    functions: list[FunctionEntry] = Field(default_factory=list)


# === Representations ===


class VerificationSummary(BaseModel):
    """Outcome of verifying a representation against its algebra."""

    holds: bool
    checked_count: int = Field(..., ge=0)
    violations: dict[str, int] = Field(default_factory=dict)


class RepresentationFile(BaseModel):
    """An element-to-function map over named base points.

    ``graphs`` maps each carrier label to rows ``[p_1, .., p_n, value]``.
    """

    model_config = ConfigDict(extra="forbid")

    rank: int = Field(..., ge=1)
    carrier: list[str]
    base: list[str]
    graphs: dict[str, list[list[str]]]
    provenance: list[tuple[str, str]] = Field(default_factory=list)
    verification: VerificationSummary | None = None
