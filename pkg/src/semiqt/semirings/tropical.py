"""Tropical (min-plus) carriers and the max-times Viterbi variant.

Min-plus semirings: addition is min, the additive unit is +infinity,
multiplication is ordinary addition with unit 0.  Squares are the doubled
elements, and since min of evens is even they already form the positive
cone.  The involution is necessarily trivial.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .base import Semiring
from ..errors import SemiringSpecError

INF = math.inf


class TropicalSemiring(Semiring):
    """Min-plus over integers ('int'), naturals ('nat') or rationals ('rat')."""

    additively_idempotent = True
    multiplicatively_cancellative = True

    _BASES = ("int", "nat", "rat")

    def __init__(self, base: str = "int"):
        if base not in self._BASES:
            raise SemiringSpecError(f"unknown tropical base {base!r}")
        self.base = base
        self.zero = INF
        self.one = 0

    @property
    def kind(self):
        return f"tropical_{self.base}"

    def add(self, a, b):
        return min(a, b)

    def mul(self, a, b):
        return INF if INF in (a, b) else a + b

    def try_invert(self, a):
        if a is INF or a == INF:
            return None
        if self.base == "nat":
            return 0 if a == 0 else None
        return -a

    def from_int(self, n):
        return INF if n == 0 else 0

    def sample(self, rng):
        if rng.random() < 0.15:
            return INF
        if self.base == "rat":
            return Fraction(rng.randint(-12, 12), rng.randint(1, 4))
        lo = 0 if self.base == "nat" else -12
        return rng.randint(lo, 12)

    def pure_witness(self, r):
        # tropical square = doubled element
        if r == INF:
            return INF
        if self.base == "rat":
            return Fraction(r) / 2
        return r // 2 if r % 2 == 0 else None

    def cone_contains(self, r):
        if r == INF:
            return True
        if self.base == "rat":
            return True
        return r % 2 == 0 and (self.base == "int" or r >= 0)

    def cone_description(self):
        if self.base == "rat":
            return "everything (all rationals are doubled)"
        return "even elements and infinity"

    def phase_elements(self):
        return [self.one]

    def spec(self):
        return {"kind": self.kind}

    def format_element(self, a):
        return "inf" if a == INF else str(a)

    def parse_element(self, v):
        if v == "inf":
            return INF
        if self.base == "rat":
            return Fraction(str(v))
        return int(v)


class ViterbiSemiring(Semiring):
    """Max-times on rational [0, 1]: tropical in disguise."""

    kind = "viterbi"
    additively_idempotent = True

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def add(self, a, b):
        return max(a, b)

    def mul(self, a, b):
        return a * b

    def try_invert(self, a):
        return self.one if a == 1 else None

    def from_int(self, n):
        return Fraction(0 if n == 0 else 1)

    def sample(self, rng):
        d = rng.randint(1, 8)
        return Fraction(rng.randint(0, d), d)

    def pure_witness(self, r):
        from .rational import _fraction_sqrt

        return _fraction_sqrt(Fraction(r))

    def cone_contains(self, r):
        return self.pure_witness(r) is not None

    def cone_description(self):
        return "rational squares in [0, 1] (closed under max)"

    def phase_elements(self):
        return [self.one]

    def format_element(self, a):
        return str(a)

    def parse_element(self, v):
        q = Fraction(str(v))
        if not 0 <= q <= 1:
            raise ValueError("viterbi values live in [0, 1]")
        return q
