"""Partial n-place functions and their difference Menger algebras."""

from menger.pfunc.algebra import (
    FunctionAlgebra,
    all_partial_functions,
    close,
    make_abstract,
    random_closed_algebra,
)
from menger.pfunc.functions import (
    UNDEFINED,
    PartialNFunction,
    difference,
    selector,
    superpose,
)

__all__ = [
    "UNDEFINED",
    "FunctionAlgebra",
    "PartialNFunction",
    "all_partial_functions",
    "close",
    "difference",
    "make_abstract",
    "random_closed_algebra",
    "selector",
    "superpose",
]
