"""Tests for polynomial terms and translation sets."""

import numpy as np
import pytest

from menger.errors import ClosureCapExceeded, ShapeMismatch, TranslationMismatch
from menger.kernel import FiniteMengerAlgebra, check_compat_axioms
from menger.terms import (
    VARIABLE,
    Node,
    elementary_translations,
    enumerate_terms,
    eval_term,
    oracle_depth,
    translations,
    translations_by_depth,
)
from tests.conftest import (
    full_unary_algebra,
    instance_params,
    one_element_algebra,
    powerset_algebra,
    two_element_algebra,
)

SMALL_ALGEBRAS = [
    pytest.param(one_element_algebra().menger, id="one-element"),
    pytest.param(two_element_algebra().menger, id="two-element"),
    pytest.param(powerset_algebra(2).menger, id="powerset2"),
    pytest.param(powerset_algebra(3).menger, id="powerset3"),
    pytest.param(powerset_algebra(3, left_projection=True).menger, id="left-projection3"),
    pytest.param(full_unary_algebra().menger, id="full-unary"),
    pytest.param(
        FiniteMengerAlgebra.from_function(2, 3, lambda x, y1, y2: y1), id="projection"
    ),
    *(
        pytest.param(p.values[0].menger, id=p.id)
        for p in instance_params(1) + instance_params(2)
        if p.values[0].size <= 9
    ),
]


@pytest.fixture
def projection():
    """Rank 2 on three elements with x[y1 y2] = y1."""
    return FiniteMengerAlgebra.from_function(2, 3, lambda x, y1, y2: y1)


class TestTerms:
    """Tests for term evaluation and printing."""

    def test_variable(self, powerset2):
        assert eval_term(powerset2.menger, VARIABLE, 2) == 2
        assert VARIABLE.depth == 0
        assert str(VARIABLE) == "x"

    def test_nested_rank_one(self, powerset2):
        """{1}[{0}[x]] is intersection with both sets."""
        t = Node(2, 1, (), Node(1, 1, (), VARIABLE))
        assert str(t) == "2[1[x]]"
        assert t.depth == 2
        assert [eval_term(powerset2.menger, t, v) for v in range(4)] == [0, 0, 0, 0]

    def test_coefficients_surround_variable(self, projection):
        """The variable sits at ``position`` among the coefficients."""
        t = Node(0, 2, (1,), VARIABLE)
        assert str(t) == "0[1 x]"
        assert [eval_term(projection, t, v) for v in range(3)] == [1, 1, 1]

    def test_bad_position(self, projection):
        with pytest.raises(ShapeMismatch):
            eval_term(projection, Node(0, 3, (1,), VARIABLE), 0)

    def test_enumeration_counts(self, powerset2, projection):
        """Each layer has m * n * m^(n-1) times the previous one."""
        assert len(enumerate_terms(powerset2.menger, 1)) == 5
        assert len(enumerate_terms(powerset2.menger, 2)) == 21
        assert len(enumerate_terms(projection, 1)) == 1 + 3 * 2 * 3

    def test_negative_depth(self, powerset2):
        with pytest.raises(ValueError):
            enumerate_terms(powerset2.menger, -1)


class TestElementaryTranslations:
    """Tests for the one-step maps."""

    def test_rank_two_positions(self, projection):
        """Varying y1 gives the identity, varying y2 gives a constant."""
        elementary = elementary_translations(projection)
        assert len(elementary) == 18
        assert elementary.rank == 2
        for row in elementary.at_position(1):
            assert list(row) == [0, 1, 2]
        assert {tuple(row) for row in elementary.at_position(2)} == {(0, 0, 0), (1, 1, 1), (2, 2, 2)}

    def test_provenance_records_slot_as_zero(self, projection):
        elementary = elementary_translations(projection)
        provenance = [tuple(int(v) for v in row) for row in elementary.provenance]
        assert provenance == sorted(provenance)
        assert (2, 0, 1, 1) in provenance
        assert (2, 1, 0, 2) in provenance
        assert (2, 1, 1, 2) not in provenance


class TestTranslationSet:
    """Tests for the translation closure."""

    def test_sizes(self, two_element, left_projection2, powerset2):
        assert len(translations(two_element.menger)) == 2
        assert len(translations(left_projection2.menger)) == 3
        assert len(translations(powerset2.menger)) == 4

    def test_identity_first(self, full_unary):
        T = translations(full_unary.menger)
        assert list(T.functions[0]) == list(range(full_unary.size))
        assert T.index_of(np.arange(full_unary.size)) == 0

    def test_generator_witnesses_induce_their_maps(self, full_unary, projection):
        """Every member is reproduced by its recorded term."""
        for M in (full_unary.menger, projection):
            T = translations(M)
            for k in range(len(T)):
                term = T.generator_witness(k)
                assert [eval_term(M, term, v) for v in range(M.size)] == list(T.functions[k])

    def test_depth_oracle_agrees(self, powerset3, full_unary, projection):
        """Bounded term enumeration converges to the fixpoint closure."""
        for M in (powerset3.menger, full_unary.menger, projection):
            T = translations(M)
            assert translations_by_depth(M, len(T)) == T.as_set()

    @pytest.mark.parametrize("M", SMALL_ALGEBRAS)
    def test_depth_oracle_converges_early(self, M):
        """Two equal consecutive depths are reached by depth 6 and give the closure."""
        depth = oracle_depth(M, 6)
        assert depth is not None
        assert depth <= 6
        closure = translations(M).as_set()
        assert translations_by_depth(M, depth) == closure
        assert translations_by_depth(M, depth + 1) == closure

    def test_oracle_depth_bound(self, powerset2):
        """Intersections with a fixed set are all reached at depth 1."""
        assert oracle_depth(powerset2.menger, 3) == 1
        assert oracle_depth(powerset2.menger, 1) is None
        assert oracle_depth(powerset2.menger, 0) is None

    def test_depth_layers_match_term_enumeration(self, full_unary):
        M = full_unary.menger
        for depth in range(3):
            by_terms = {
                tuple(eval_term(M, t, v) for v in range(M.size)) for t in enumerate_terms(M, depth)
            }
            assert translations_by_depth(M, depth) == by_terms

    def test_cap(self, powerset2):
        with pytest.raises(ClosureCapExceeded):
            translations(powerset2.menger, cap=1)

    def test_mismatch(self, powerset2):
        """A translation set is tied to the table it was computed from."""
        other = powerset_algebra(2, left_projection=True)
        with pytest.raises(TranslationMismatch):
            check_compat_axioms(other, translations(powerset2.menger))

    def test_closed_under_elementary_translations(self, full_unary):
        """Applying any one-step map after a member stays inside the set."""
        T = translations(full_unary.menger)
        members = T.as_set()
        for step in elementary_translations(full_unary.menger).vectors:
            for row in T.functions:
                assert tuple(int(v) for v in step[row]) in members
