"""Polynomial terms and translation sets."""

from menger.terms.term import VARIABLE, Node, Term, Variable, enumerate_terms, eval_term
from menger.terms.translations import (
    ElementaryTranslations,
    TranslationSet,
    elementary_translations,
    oracle_depth,
    translations,
    translations_by_depth,
)

__all__ = [
    "VARIABLE",
    "ElementaryTranslations",
    "Node",
    "Term",
    "TranslationSet",
    "Variable",
    "elementary_translations",
    "enumerate_terms",
    "eval_term",
    "oracle_depth",
    "translations",
    "translations_by_depth",
]
