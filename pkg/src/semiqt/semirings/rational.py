"""Signed rationals with trivial involution.

Stands in for the reals: exact arithmetic only, so pure scalars are the
rational squares while the positive cone is every nonnegative rational
(each one a sum of at most four squares).
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .base import Semiring


def _fraction_sqrt(q: Fraction):
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def four_square_decomposition(n: int) -> list[int]:
    """Nonneg integers x with sum(x^2) = n (Lagrange); deterministic search."""
    assert n >= 0
    from sympy.solvers.diophantine.diophantine import sum_of_squares

    if n == 0:
        return []
    sol = next(iter(sum_of_squares(n, 4, zeros=True)))
    return [x for x in sol if x != 0]


class RationalField(Semiring):
    kind = "rational"
    is_field = True
    multiplicatively_cancellative = True
    has_negation = True

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def try_invert(self, a):
        return None if a == 0 else 1 / Fraction(a)

    def from_int(self, n):
        return Fraction(n)

    def sample(self, rng):
        return Fraction(rng.randint(-6, 6), rng.randint(1, 6))

    def pure_witness(self, r):
        return _fraction_sqrt(Fraction(r))

    def cone_contains(self, r):
        return r >= 0

    def cone_witness(self, r):
        # r = (a b)/b^2 with a b a sum of four integer squares
        if r < 0:
            return None
        r = Fraction(r)
        n, d = r.numerator, r.denominator
        return [Fraction(x, d) for x in four_square_decomposition(n * d)]

    def cone_description(self):
        return "nonnegative rationals"

    def phase_elements(self):
        return [self.one, Fraction(-1)]

    def format_element(self, a):
        return str(Fraction(a))

    def parse_element(self, v):
        return Fraction(str(v))
