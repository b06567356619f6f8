"""Finite algebras, axiom checkers and relation/subset properties."""

from menger.kernel.algebra import BinaryRelation, FiniteMengerAlgebra, SubtractionMengerAlgebra
from menger.kernel.report import CheckReport, Witness, WitnessCollector
from menger.kernel.axioms import (
    VerifiedAlgebra,
    check_axioms,
    check_compat_axioms,
    check_omega_order,
    check_subtraction_axioms,
    check_superassociativity,
    verify_algebra,
)
from menger.kernel.derived import check_derived_identities, check_prop4_equivalences
from menger.kernel.properties import (
    RelationProperties,
    SubsetProperties,
    relation_properties,
    subset_properties,
)

__all__ = [
    "BinaryRelation",
    "CheckReport",
    "FiniteMengerAlgebra",
    "RelationProperties",
    "SubsetProperties",
    "SubtractionMengerAlgebra",
    "VerifiedAlgebra",
    "Witness",
    "WitnessCollector",
    "check_axioms",
    "check_compat_axioms",
    "check_derived_identities",
    "check_omega_order",
    "check_prop4_equivalences",
    "check_subtraction_axioms",
    "check_superassociativity",
    "relation_properties",
    "subset_properties",
    "verify_algebra",
]
