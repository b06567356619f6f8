"""Unary polynomial terms with a single occurrence of the variable."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import TYPE_CHECKING

from menger.errors import ShapeMismatch

if TYPE_CHECKING:
    from menger.kernel.algebra import FiniteMengerAlgebra


@dataclass(frozen=True)
class Variable:
    """The bare variable ``x``."""

    @property
    def depth(self) -> int:
        return 0

    def __str__(self) -> str:
        return "x"


@dataclass(frozen=True)
class Node:
    """``head[b_1 .. b_{i-1} child b_{i+1} .. b_n]`` with ``position = i`` (1-based)."""

    head: int
    position: int
    coefficients: tuple[int, ...]
    child: Term

    @property
    def depth(self) -> int:
        depth = 0
        term: Term = self
        while isinstance(term, Node):
            depth += 1
            term = term.child
        return depth

    def arguments(self, value: int) -> tuple[int, ...]:
        i = self.position - 1
        return self.coefficients[:i] + (value,) + self.coefficients[i:]

    def __str__(self) -> str:
        chain: list[Node] = []
        term: Term = self
        while isinstance(term, Node):
            chain.append(term)
            term = term.child
        text = "x"
        for node in reversed(chain):
            parts = [str(c) for c in node.coefficients]
            parts.insert(node.position - 1, text)
            text = f"{node.head}[{' '.join(parts)}]"
        return text


Term = Variable | Node

VARIABLE = Variable()


def _check_node(M: FiniteMengerAlgebra, node: Node) -> None:
    if not 1 <= node.position <= M.rank:
        raise ShapeMismatch(f"position {node.position} outside 1..{M.rank}")
    if len(node.coefficients) != M.rank - 1:
        raise ShapeMismatch(
            f"rank {M.rank} terms take {M.rank - 1} coefficients, got {len(node.coefficients)}"
        )
    M.check_index(node.head)
    for value in node.coefficients:
        M.check_index(value)


def eval_term(M: FiniteMengerAlgebra, t: Term, x: int) -> int:
    """Evaluate ``t`` at ``x`` innermost first."""
    M.check_index(x)
    chain: list[Node] = []
    term: Term = t
    while isinstance(term, Node):
        chain.append(term)
        term = term.child
    value = x
    for node in reversed(chain):
        _check_node(M, node)
        value = int(M.op[(node.head, *node.arguments(value))])
    return value


def enumerate_terms(M: FiniteMengerAlgebra, depth_limit: int) -> list[Term]:
    """All terms of depth at most ``depth_limit`` in (depth, lexicographic) order."""
    if depth_limit < 0:
        raise ValueError(f"depth_limit must be non-negative, got {depth_limit}")
    layer: list[Term] = [VARIABLE]
    terms: list[Term] = [VARIABLE]
    for _ in range(depth_limit):
        next_layer: list[Term] = []
        for head in range(M.size):
            for position in range(1, M.rank + 1):
                for coefficients in product(range(M.size), repeat=M.rank - 1):
                    for child in layer:
                        next_layer.append(Node(head, position, coefficients, child))
        terms.extend(next_layer)
        layer = next_layer
    return terms
