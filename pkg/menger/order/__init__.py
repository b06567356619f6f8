"""The induced order, its filters and determining pairs."""

from menger.order.structure import (
    UNDEFINED,
    OrderStructure,
    build_order,
    check_join_identities,
    check_join_wellposed,
    check_meet_laws,
)
from menger.order.filters import (
    Filter,
    enumerate_filters,
    is_filter,
    maximal_filter,
    principal_filter,
    separable_pairs,
)
from menger.order.pairs import DeterminingPairData, determining_pairs, epsilon_relation, w_ideal

__all__ = [
    "UNDEFINED",
    "DeterminingPairData",
    "Filter",
    "OrderStructure",
    "build_order",
    "check_join_identities",
    "check_join_wellposed",
    "check_meet_laws",
    "determining_pairs",
    "enumerate_filters",
    "epsilon_relation",
    "is_filter",
    "maximal_filter",
    "principal_filter",
    "separable_pairs",
    "w_ideal",
]
