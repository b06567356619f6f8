"""Test configuration and fixtures."""

from __future__ import annotations

import tempfile
from collections.abc import Iterator
from pathlib import Path
from typing import Any

import numpy as np
import pytest
from hypothesis import settings

from menger.config import reset_config
from menger.errors import ClosureCapExceeded
from menger.kernel import SubtractionMengerAlgebra
from menger.pfunc import (
    PartialNFunction,
    all_partial_functions,
    close,
    make_abstract,
    random_closed_algebra,
)

settings.register_profile("menger", derandomize=True, deadline=None)
settings.load_profile("menger")


@pytest.fixture
def temp_dir():
    """Create a temporary directory for test files."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture(autouse=True)
def reset_globals():
    """Reset global state between tests."""
    yield
    reset_config()


def powerset_algebra(atoms: int, *, left_projection: bool = False) -> SubtractionMengerAlgebra:
    """Subsets of ``atoms`` points as bitmasks with set difference.

    The rank-1 operation is intersection, or ``x[y] = x`` with ``left_projection``.
    """
    size = 1 << atoms
    x = np.arange(size)[:, None]
    y = np.arange(size)[None, :]
    op = np.broadcast_to(x, (size, size)) if left_projection else x & y
    labels = tuple("{" + ",".join(str(a) for a in range(atoms) if v >> a & 1) + "}" for v in range(size))
    return SubtractionMengerAlgebra.from_tables(
        rank=1, op=op, sub=x & ~y, zero=0, labels=labels
    )


def one_element_algebra() -> SubtractionMengerAlgebra:
    return SubtractionMengerAlgebra.from_tables(
        rank=1, op=[[0]], sub=[[0]], zero=0, labels=("0",)
    )


def two_element_algebra() -> SubtractionMengerAlgebra:
    """``{f, ∅}`` with ``f`` the identity on a one-point base; f is index 0."""
    f = PartialNFunction.from_mapping(1, 1, {0: 0})
    return make_abstract(close([f], names=("f",)))


def full_unary_algebra() -> SubtractionMengerAlgebra:
    """All nine partial maps on a two-point base; ``f0`` is the empty map."""
    return make_abstract(all_partial_functions(2, 1))


def seeded_instances(
    rank: int, seeds: range, cap: int = 40
) -> Iterator[tuple[int, SubtractionMengerAlgebra]]:
    """Concrete algebras on two points from seeded random generators.

    Seeds whose closure grows past ``cap`` are skipped.
    """
    for seed in seeds:
        try:
            family = random_closed_algebra(2, rank, seed=seed, cap=cap)
        except ClosureCapExceeded:
            continue
        yield seed, make_abstract(family)


def random_instances(rank: int, seeds: range, cap: int = 40) -> Iterator[SubtractionMengerAlgebra]:
    for _, S in seeded_instances(rank, seeds, cap):
        yield S


def instance_params(rank: int, seeds: range = range(50), cap: int = 40) -> list[Any]:
    """``seeded_instances`` as parametrize entries with readable ids."""
    return [
        pytest.param(S, id=f"rank{rank}-seed{seed}")
        for seed, S in seeded_instances(rank, seeds, cap)
    ]


@pytest.fixture
def one_element():
    return one_element_algebra()


@pytest.fixture
def two_element():
    return two_element_algebra()


@pytest.fixture
def powerset2():
    """Four subsets of two points with intersection."""
    return powerset_algebra(2)


@pytest.fixture
def powerset3():
    return powerset_algebra(3)


@pytest.fixture
def left_projection2():
    return powerset_algebra(1, left_projection=True)


@pytest.fixture
def left_projection3():
    return powerset_algebra(3, left_projection=True)


@pytest.fixture
def full_unary():
    return full_unary_algebra()
