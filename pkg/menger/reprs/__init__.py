"""Representations by partial n-place functions."""

from menger.reprs.representation import (
    BasePoint,
    Representation,
    RepresentationBlock,
    sum_representations,
)
from menger.reprs.simplest import simplest_representation
from menger.reprs.verify import verify_representation
from menger.reprs.pipeline import theorem2_pipeline, tiebreak_robustness

__all__ = [
    "BasePoint",
    "Representation",
    "RepresentationBlock",
    "simplest_representation",
    "sum_representations",
    "theorem2_pipeline",
    "tiebreak_robustness",
    "verify_representation",
]
