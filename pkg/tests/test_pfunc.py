"""Tests for partial n-place functions and their closures."""

import numpy as np
import pytest

from menger.errors import ClosureCapExceeded, IndexOutOfRange, NotClosed, ShapeMismatch
from menger.pfunc import (
    FunctionAlgebra,
    PartialNFunction,
    all_partial_functions,
    close,
    difference,
    make_abstract,
    random_closed_algebra,
    selector,
    superpose,
)


def unary(base_size, mapping):
    return PartialNFunction.from_mapping(base_size, 1, mapping)


class TestPartialNFunction:
    """Tests for single functions."""

    def test_call(self):
        f = unary(3, {0: 1, 2: 2})
        assert f(0) == 1
        assert f(1) is None
        assert f.domain_size == 2
        assert list(f.items()) == [((0,), 1), ((2,), 2)]

    def test_rejects_out_of_range_value(self):
        with pytest.raises(IndexOutOfRange):
            unary(2, {0: 2})

    def test_rejects_wrong_arity(self):
        with pytest.raises(ShapeMismatch):
            PartialNFunction.from_mapping(2, 2, {0: 1})

    def test_empty(self):
        assert PartialNFunction.empty(3, 2).is_empty
        assert not selector(3, 2, 1).is_empty

    def test_equality_uses_graph(self):
        assert unary(2, {0: 1}) == PartialNFunction.from_codes(2, 1, [1, -1])
        assert unary(2, {0: 1}) != unary(2, {1: 1})


class TestOperations:
    """Tests for superposition and difference."""

    def test_superpose_unary(self):
        """f[g] is defined where g is and f is at g's value."""
        f = unary(3, {0: 1, 1: 2})
        g = unary(3, {0: 1, 2: 0})
        assert superpose(f, g) == unary(3, {0: 2, 2: 1})

    def test_selectors_are_right_identities(self):
        f = PartialNFunction.from_mapping(3, 2, {(0, 1): 2, (2, 2): 0})
        assert superpose(f, selector(3, 2, 1), selector(3, 2, 2)) == f

    def test_selector_picks_argument(self):
        g = PartialNFunction.from_mapping(2, 2, {(0, 0): 1, (1, 0): 0})
        h = PartialNFunction.from_mapping(2, 2, {(0, 0): 0, (0, 1): 1})
        assert superpose(selector(2, 2, 1), g, h) == PartialNFunction.from_mapping(
            2, 2, {(0, 0): 1}
        )

    def test_difference_removes_shared_pairs(self):
        f = unary(3, {0: 1, 1: 2})
        g = unary(3, {0: 1, 1: 0})
        assert difference(f, g) == unary(3, {1: 2})
        assert difference(f, f).is_empty

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            difference(unary(2, {}), unary(3, {}))
        with pytest.raises(ShapeMismatch):
            superpose(unary(2, {}))


class TestClosure:
    """Tests for closing generator sets."""

    def test_empty_generators(self):
        """The least closed family is {∅}."""
        F = close([], base_size=2, rank=1)
        assert len(F) == 1
        assert F[0].is_empty
        assert F.is_closed

    def test_empty_generators_need_a_shape(self):
        with pytest.raises(ShapeMismatch):
            close([])

    def test_identity(self):
        """Id generates only itself and ∅."""
        F = close([selector(2, 1, 1)], names=("id",))
        assert len(F) == 2
        assert F.names == ("id", "f1")
        assert F[1].is_empty

    def test_generators_come_first(self):
        f = unary(2, {0: 1, 1: 0})
        g = unary(2, {0: 0})
        F = close([f, g])
        assert F[0] == f
        assert F[1] == g
        assert F[2].is_empty

    def test_cap(self):
        with pytest.raises(ClosureCapExceeded):
            close(list(all_partial_functions(2, 1)), cap=5)

    def test_stays_inside_full_function_set(self):
        F = close([unary(2, {0: 1, 1: 0}), unary(2, {0: 0})])
        full = all_partial_functions(2, 1)
        assert {f.key for f in F} <= {f.key for f in full}
        assert all(F.index_of(f) is not None for f in F)


class TestAllPartialFunctions:
    """Tests for the full function set."""

    def test_unary_on_two_points(self):
        F = all_partial_functions(2, 1)
        assert len(F) == 9
        assert F[0].is_empty
        assert F.names[0] == "f0"

    def test_binary_on_two_points(self):
        assert len(all_partial_functions(2, 2)) == 81

    def test_cap(self):
        with pytest.raises(ClosureCapExceeded):
            all_partial_functions(2, 2, cap=50)


class TestRandomClosedAlgebra:
    """Tests for the seeded generator."""

    def test_deterministic(self):
        a = random_closed_algebra(2, 1, seed=3)
        b = random_closed_algebra(2, 1, seed=3)
        assert np.array_equal(a.matrix, b.matrix)

    def test_closed(self):
        for seed in range(5):
            assert random_closed_algebra(2, 1, seed=seed).is_closed


class TestMakeAbstract:
    """Tests for reading off operation tables."""

    def test_two_element(self, two_element):
        """f is the identity on one point; index 1 is ∅."""
        assert two_element.labels == ("f", "f1")
        assert two_element.zero == 1
        assert two_element.op.tolist() == [[0, 1], [1, 1]]
        assert two_element.sub.tolist() == [[1, 0], [1, 1]]

    def test_missing_empty_function(self):
        F = FunctionAlgebra.of([selector(1, 1, 1)])
        assert not F.contains_empty
        assert F.closed_under_superposition
        assert not F.closed_under_difference
        with pytest.raises(NotClosed) as excinfo:
            make_abstract(F)
        assert excinfo.value.operation == "empty function"

    def test_escaping_superposition(self):
        """The swap composed with itself is the identity, which is missing."""
        swap = unary(2, {0: 1, 1: 0})
        F = FunctionAlgebra.of([PartialNFunction.empty(2, 1), swap])
        with pytest.raises(NotClosed) as excinfo:
            make_abstract(F)
        assert excinfo.value.operation == "superposition"
        assert excinfo.value.operands == (1, 1)

    def test_duplicate_members(self):
        f = unary(2, {0: 1})
        with pytest.raises(ShapeMismatch):
            FunctionAlgebra(base_size=2, rank=1, elements=(f, f))

    def test_order_is_inclusion(self, full_unary):
        """x <= y exactly when the graph of x is contained in the graph of y."""
        F = all_partial_functions(2, 1)
        for x, f in enumerate(F):
            for y, g in enumerate(F):
                contained = set(f.items()) <= set(g.items())
                assert bool(full_unary.leq[x, y]) == contained
