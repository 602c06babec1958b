"""Split-complex rationals: pairs x + j y with j^2 = 1.

Carries zero divisors ((1+j)(1-j) = 0), conjugation x + j y -> x - j y, and
the signed rationals as positive cone: every rational r is the single norm
((r+1)/2)^2 - ((r-1)/2)^2.  Unit-norm elements form the rational points of
the hyperbola x^2 - y^2 = 1 and are not enumerable; membership testing and
a rational parametrization are provided instead.
"""

from __future__ import annotations

from fractions import Fraction

from .base import Semiring


class SplitComplexRationals(Semiring):
    kind = "split_complex"
    has_negation = True

    def __init__(self):
        self.zero = (Fraction(0), Fraction(0))
        self.one = (Fraction(1), Fraction(0))

    @staticmethod
    def element(x, y=0):
        return (Fraction(x), Fraction(y))

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def mul(self, a, b):
        # (x1 + j y1)(x2 + j y2) = (x1 x2 + y1 y2) + j (x1 y2 + y1 x2)
        return (a[0] * b[0] + a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    def involution(self, a):
        return (a[0], -a[1])

    def neg(self, a):
        return (-a[0], -a[1])

    def try_invert(self, a):
        n = a[0] * a[0] - a[1] * a[1]
        if n == 0:
            return None
        return (a[0] / n, -a[1] / n)

    def from_int(self, n):
        return (Fraction(n), Fraction(0))

    def sample(self, rng):
        return (Fraction(rng.randint(-5, 5), rng.randint(1, 4)),
                Fraction(rng.randint(-5, 5), rng.randint(1, 4)))

    def pure_witness(self, r):
        # norms are j-free; any rational r is the norm of ((r+1)/2, (r-1)/2)
        if r[1] != 0:
            return None
        x = r[0]
        return ((x + 1) / 2, (x - 1) / 2)

    def cone_contains(self, r):
        return r[1] == 0

    def cone_witness(self, r):
        return None if r[1] != 0 else [self.pure_witness(r)]

    def cone_description(self):
        return "signed rationals (j-part zero)"

    def is_phase(self, a) -> bool:
        return self.eq(self.norm(a), self.one)

    @staticmethod
    def hyperbola_point(t) -> tuple:
        """Rational unit-hyperbola point ((1+t^2)/(1-t^2), 2t/(1-t^2)), t != +-1."""
        t = Fraction(t)
        if abs(t) == 1:
            raise ValueError("parametrization undefined at t = +-1")
        d = 1 - t * t
        return ((1 + t * t) / d, 2 * t / d)

    def lhv_field(self):
        from .rational import RationalField

        field = RationalField()

        def embed(a):
            if a[1] != 0:
                raise ValueError("not a positive-cone element")
            return a[0]

        return field, embed

    def format_element(self, a):
        return [str(a[0]), str(a[1])]

    def parse_element(self, v):
        x, y = v
        return (Fraction(str(x)), Fraction(str(y)))
