"""Totally ordered lattices as semirings: join is addition, meet is product.

The booleans are the two-element chain.  These carriers are additively and
multiplicatively idempotent, fix every element under the involution, and
coincide with their own positive cone.
"""

from __future__ import annotations

from .base import Semiring
from ..errors import SemiringSpecError


class ChainLattice(Semiring):
    """The chain 0 < 1 < ... < size-1 with add = max, mul = min."""

    kind = "chain_lattice"
    finite_enumerable = True
    additively_idempotent = True

    def __init__(self, size: int):
        if size < 2:
            raise SemiringSpecError("chain lattice needs at least two elements")
        self._size = size
        self.zero = 0
        self.one = size - 1

    def add(self, a, b):
        return max(a, b)

    def mul(self, a, b):
        return min(a, b)

    def elements(self):
        return list(range(self._size))

    def try_invert(self, a):
        return self.one if a == self.one else None

    def from_int(self, n):
        return self.zero if n == 0 else self.one

    def cone_description(self):
        return "whole lattice (x*x = x)"

    def spec(self):
        return {"kind": self.kind, "size": self._size}

    def format_element(self, a):
        return a

    def parse_element(self, v):
        return int(v)


class BooleanSemiring(ChainLattice):
    kind = "boolean"
    multiplicatively_cancellative = True

    def __init__(self):
        super().__init__(2)

    def spec(self):
        return {"kind": self.kind}
