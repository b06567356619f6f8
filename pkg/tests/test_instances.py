"""Seeded concrete algebras of ranks 1 and 2 run through every checker.

Each instance is a difference-closed family of partial functions on two
points, so every law below must hold with no witnesses.
"""

from functools import cache

import pytest

from menger.kernel import (
    VerifiedAlgebra,
    check_derived_identities,
    check_prop4_equivalences,
    relation_properties,
    subset_properties,
    verify_algebra,
)
from menger.order import (
    build_order,
    check_join_identities,
    check_join_wellposed,
    check_meet_laws,
    determining_pairs,
    is_filter,
)
from menger.reprs import tiebreak_robustness
from tests.conftest import full_unary_algebra, instance_params

SUITE = [
    pytest.param(full_unary_algebra(), id="full-unary"),
    *instance_params(1),
    *instance_params(2),
]


@cache
def verified(S) -> VerifiedAlgebra:
    return verify_algebra(S)


@pytest.mark.parametrize("S", SUITE)
class TestInstanceSuite:
    """Every instance passes every check."""

    def test_axioms(self, S):
        report = verified(S).report
        assert report.holds
        assert report.witnesses == []

    def test_derived_identities(self, S):
        report = check_derived_identities(S, verified(S).translations)
        assert report.holds, report.failed_axioms()
        assert report.witnesses == []

    def test_meet_preservation_formulations(self, S):
        report = check_prop4_equivalences(S, verified(S).translations)
        assert report.holds
        assert set(report.evaluations.values()) == {True}

    def test_order_laws(self, S):
        O = build_order(S)
        for report in (
            check_meet_laws(O),
            check_join_wellposed(O),
            check_join_identities(O, verified(S).translations),
        ):
            assert report.holds, report.failed_axioms()

    def test_determining_pairs(self, S):
        """ε is a v-regular equivalence and W an l-ideal class closed under joins."""
        O = build_order(S)
        seen = set()
        for D in determining_pairs(O, verified(S).translations):
            a, b = D.pair
            assert a in D.filter and b not in D.filter
            if D.filter.generator in seen:
                continue
            seen.add(D.filter.generator)

            assert D.eps.is_equivalence()
            assert relation_properties(S.menger, D.eps, only={"v_regular"}).v_regular
            assert subset_properties(S.menger, D.w).l_ideal
            assert not D.w or D.w in D.classes
            for c in D.classes:
                if c != D.w:
                    assert is_filter(O, c)
            for x in D.w:
                for y in D.w:
                    if O.join_defined[x, y]:
                        assert int(O.join[x, y]) in D.w

    @pytest.mark.parametrize("tiebreak", ["least", "greatest"])
    def test_faithful_under_both_tiebreaks(self, S, tiebreak):
        report = tiebreak_robustness(verified(S), tiebreak)
        assert report.holds
        assert report.witnesses == []

