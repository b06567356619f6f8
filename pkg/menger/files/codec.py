"""Reading and writing algebras, function sets and representations.

Files are JSON, or YAML when the suffix is ``.yaml``/``.yml``. Every
structural problem is reported as a ``FileFormatError`` naming the path and
the offending entry.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from pathlib import Path
from typing import TypeVar

import numpy as np
import yaml
from pydantic import BaseModel, ValidationError

from menger.errors import FileFormatError, IndexOutOfRange, ShapeMismatch
from menger.files.schemas import (
    AlgebraFile,
    FunctionEntry,
    FunctionSetFile,
    RepresentationFile,
    VerificationSummary,
)
from menger.kernel import FiniteMengerAlgebra, SubtractionMengerAlgebra
from menger.kernel.algebra import IntTable
from menger.pfunc import UNDEFINED, FunctionAlgebra, PartialNFunction
from menger.reprs import Representation

logger = logging.getLogger(__name__)

Model = TypeVar("Model", bound=BaseModel)

YAML_SUFFIXES = {".yaml", ".yml"}
MEMORY = "<memory>"


def read_model(path: str | Path, model: type[Model]) -> Model:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(path, "", exc.strerror or str(exc)) from exc
    try:
        if path.suffix in YAML_SUFFIXES:
            return model.model_validate(yaml.safe_load(text))
        return model.model_validate_json(text)
    except yaml.YAMLError as exc:
        raise FileFormatError(path, "", f"invalid YAML: {exc}") from exc
    except ValidationError as exc:
        error = exc.errors()[0]
        location = ".".join(str(part) for part in error["loc"])
        raise FileFormatError(path, location, error["msg"]) from exc


def write_model(path: str | Path, model: BaseModel) -> None:
    path = Path(path)
    if path.suffix in YAML_SUFFIXES:
        text = yaml.safe_dump(model.model_dump(mode="json"), sort_keys=False)
    else:
        text = model.model_dump_json(indent=2) + "\n"
    path.write_text(text, encoding="utf-8")
    logger.debug("wrote %s", path)


class _Labels:
    """Label to index lookup that reports unknown labels with their location."""

    def __init__(self, labels: Sequence[str], path: str | Path, what: str) -> None:
        self.labels = tuple(labels)
        self.index = {label: k for k, label in enumerate(labels)}
        self.path = path
        self.what = what
        if len(self.index) != len(self.labels):
            raise FileFormatError(path, what, f"duplicate {what} labels")

    def __call__(self, label: str, location: str) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise FileFormatError(
                self.path, location, f"unknown {self.what} label {label!r}"
            ) from None


# === Algebra ===


def _decode_table(
    rows: Sequence[Sequence[str]], arity: int, lookup: _Labels, name: str
) -> IntTable:
    m = len(lookup.labels)
    table = np.full((m,) * arity, UNDEFINED, dtype=np.intp)
    for r, row in enumerate(rows):
        location = f"{name}[{r}]"
        if len(row) != arity + 1:
            raise FileFormatError(
                lookup.path, location, f"expected {arity + 1} labels, got {len(row)}"
            )
        cell = tuple(lookup(label, location) for label in row)
        if table[cell[:-1]] != UNDEFINED:
            raise FileFormatError(lookup.path, location, f"duplicate entry for {list(row[:-1])}")
        table[cell[:-1]] = cell[-1]
    missing = np.argwhere(table == UNDEFINED)
    if len(missing):
        first = [lookup.labels[int(v)] for v in missing[0]]
        raise FileFormatError(lookup.path, name, f"{name} table not total: no entry for {first}")
    return table


def algebra_from_model(
    model: AlgebraFile, path: str | Path = MEMORY
) -> FiniteMengerAlgebra | SubtractionMengerAlgebra:
    """Decode tables; a subtraction table makes it a subtraction Menger algebra."""
    lookup = _Labels(model.carrier, path, "carrier")
    op = _decode_table(model.menger, model.rank + 1, lookup, "menger")
    menger = FiniteMengerAlgebra(rank=model.rank, op=op, labels=tuple(model.carrier))
    if model.subtraction is None:
        if model.zero is not None:
            raise FileFormatError(path, "zero", "zero given without a subtraction table")
        return menger
    if model.zero is None:
        raise FileFormatError(path, "zero", "a subtraction table needs a zero")
    zero = lookup(model.zero, "zero")
    sub = _decode_table(model.subtraction, 2, lookup, "subtraction")
    return SubtractionMengerAlgebra(menger=menger, sub=sub, zero=zero)


def algebra_to_model(A: FiniteMengerAlgebra | SubtractionMengerAlgebra) -> AlgebraFile:
    labels = A.labels
    menger = A.menger if isinstance(A, SubtractionMengerAlgebra) else A
    rows = [
        [labels[v] for v in (*cell, int(menger.op[cell]))] for cell in np.ndindex(menger.op.shape)
    ]
    if not isinstance(A, SubtractionMengerAlgebra):
        return AlgebraFile(rank=menger.rank, carrier=list(labels), menger=rows)
    subtraction = [
        [labels[x], labels[y], labels[int(A.sub[x, y])]] for x, y in np.ndindex(A.sub.shape)
    ]
    return AlgebraFile(
        rank=menger.rank,
        carrier=list(labels),
        menger=rows,
        subtraction=subtraction,
        zero=labels[A.zero],
    )


def load_algebra(path: str | Path) -> FiniteMengerAlgebra | SubtractionMengerAlgebra:
    return algebra_from_model(read_model(path, AlgebraFile), path)


def dump_algebra(A: FiniteMengerAlgebra | SubtractionMengerAlgebra, path: str | Path) -> None:
    write_model(path, algebra_to_model(A))


# === Function sets ===


def default_base_labels(base_size: int) -> list[str]:
    return [str(a) for a in range(base_size)]


def function_set_to_model(
    F: FunctionAlgebra, base_labels: Sequence[str] | None = None
) -> FunctionSetFile:
    base = list(base_labels) if base_labels is not None else default_base_labels(F.base_size)
    if len(base) != F.base_size:
        raise ShapeMismatch(f"{len(base)} base labels for a base of {F.base_size}")
    functions = [
        FunctionEntry(
            name=name,
            graph=[[base[v] for v in (*args, value)] for args, value in f.items()],
        )
        for name, f in zip(F.names, F.elements, strict=True)
    ]
    return FunctionSetFile(base=base, rank=F.rank, functions=functions)


def function_set_from_model(model: FunctionSetFile, path: str | Path = MEMORY) -> FunctionAlgebra:
    """Decode a family and decide its closure flags."""
    lookup = _Labels(model.base, path, "base")
    k, n = len(model.base), model.rank
    functions = []
    for e, entry in enumerate(model.functions):
        mapping: dict[tuple[int, ...], int] = {}
        for r, row in enumerate(entry.graph):
            location = f"functions[{e}].graph[{r}]"
            if len(row) != n + 1:
                raise FileFormatError(path, location, f"expected {n + 1} labels, got {len(row)}")
            args = tuple(lookup(label, location) for label in row[:-1])
            if args in mapping:
                raise FileFormatError(path, location, f"input {list(row[:-1])} given twice")
            mapping[args] = lookup(row[-1], location)
        functions.append(PartialNFunction.from_mapping(k, n, mapping))
    try:
        return FunctionAlgebra.of(
            functions, [entry.name for entry in model.functions], base_size=k, rank=n
        )
    except ShapeMismatch as exc:
        raise FileFormatError(path, "functions", str(exc)) from exc


def load_function_set(path: str | Path) -> FunctionAlgebra:
    return function_set_from_model(read_model(path, FunctionSetFile), path)


def dump_function_set(
    F: FunctionAlgebra, path: str | Path, base_labels: Sequence[str] | None = None
) -> None:
    write_model(path, function_set_to_model(F, base_labels))


# === Representations ===


def representation_to_model(R: Representation) -> RepresentationFile:
    labels = R.algebra.labels
    names = [point.name for point in R.base]
    graphs = {
        label: [[names[v] for v in (*args, value)] for args, value in R.graph_tuples(g)]
        for g, label in enumerate(labels)
    }
    verification = None
    if R.report is not None:
        verification = VerificationSummary(
            holds=R.report.holds,
            checked_count=R.report.checked_count,
            violations=dict(R.report.violations),
        )
    return RepresentationFile(
        rank=R.rank,
        carrier=list(labels),
        base=names,
        graphs=graphs,
        provenance=[(labels[a], labels[b]) for a, b in R.provenance],
        verification=verification,
    )


def representation_from_model(
    model: RepresentationFile, S: SubtractionMengerAlgebra, path: str | Path = MEMORY
) -> Representation:
    """Decode against ``S``, whose carrier labels and rank must match the file."""
    if model.rank != S.rank or model.carrier != list(S.labels):
        raise FileFormatError(path, "carrier", "carrier or rank does not match the algebra")
    elements = _Labels(model.carrier, path, "carrier")
    points = _Labels(model.base, path, "base point")
    graphs: dict[int, list[list[int]]] = {}
    for label, rows in model.graphs.items():
        g = elements(label, f"graphs.{label}")
        decoded = []
        for r, row in enumerate(rows):
            location = f"graphs.{label}[{r}]"
            decoded.append([points(name, location) for name in row])
        graphs[g] = decoded
    provenance = [
        (elements(a, f"provenance[{k}]"), elements(b, f"provenance[{k}]"))
        for k, (a, b) in enumerate(model.provenance)
    ]
    try:
        return Representation.from_graphs(S, model.base, graphs, provenance)
    except (ShapeMismatch, IndexOutOfRange) as exc:
        raise FileFormatError(path, "graphs", str(exc)) from exc


def load_representation(path: str | Path, S: SubtractionMengerAlgebra) -> Representation:
    return representation_from_model(read_model(path, RepresentationFile), S, path)


def dump_representation(R: Representation, path: str | Path) -> None:
    write_model(path, representation_to_model(R))

