"""On-disk formats for algebras, function sets and representations."""

from menger.files.codec import (
    algebra_from_model,
    algebra_to_model,
    dump_algebra,
    dump_function_set,
    dump_representation,
    function_set_from_model,
    function_set_to_model,
    load_algebra,
    load_function_set,
    load_representation,
    representation_from_model,
    representation_to_model,
)
from menger.files.schemas import (
    AlgebraFile,
    FunctionEntry,
    FunctionSetFile,
    RepresentationFile,
    VerificationSummary,
)

__all__ = [
    "AlgebraFile",
    "FunctionEntry",
    "FunctionSetFile",
    "RepresentationFile",
    "VerificationSummary",
    "algebra_from_model",
    "algebra_to_model",
    "dump_algebra",
    "dump_function_set",
    "dump_representation",
    "function_set_from_model",
    "function_set_to_model",
    "load_algebra",
    "load_function_set",
    "load_representation",
    "representation_from_model",
    "representation_to_model",
]
