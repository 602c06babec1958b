"""Truncated p-adic arithmetic and the quadratic extension carrier.

A scalar is zero or a pair (v, u): the exact ball p^v (u + p^k Z_p) with
valuation v and unit digits u mod p^k at fixed working precision k.
Multiplication, negation and inversion are exact on balls.  Addition is
only performed when the result is again a full-precision ball; otherwise a
PrecisionLossError is raised: when valuations differ by >= k (the smaller
operand would be silently truncated away) and when leading digits cancel
(the result's digits are not determined by the operands').

The carrier exposed to the rest of the library is the quadratic extension
of the p-adic numbers by sqrt(eps), eps the smallest primitive root mod p:
elements are pairs (c, s) = c + s sqrt(eps) of truncated scalars, with the
conjugation (c, s) -> (c, -s).  Scalars embed on the s = 0 axis, where the
norm c^2 - eps s^2 lands; an element of the scalar axis is a norm exactly
when its valuation is even, giving the sign rule sgn(x) = (-1)^ord(x).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime
from sympy.ntheory import sqrt_mod
from sympy.ntheory.residue_ntheory import primitive_root

from .base import Semiring
from ..errors import PrecisionLossError, SemiringSpecError


@dataclass(frozen=True)
class PadicScalar:
    """Valuation + unit digits; ``u == 0`` encodes exact zero."""

    v: int
    u: int

    def is_zero(self):
        return self.u == 0


PADIC_ZERO = PadicScalar(0, 0)


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class _ScalarOps:
    """Arithmetic on truncated scalars for a fixed (p, k)."""

    def __init__(self, p: int, k: int):
        self.p, self.k = p, k
        self.pk = p ** k

    def from_int(self, n: int) -> PadicScalar:
        if n == 0:
            return PADIC_ZERO
        sign = 1 if n > 0 else -1
        v = _vp(abs(n), self.p)
        u = (sign * (abs(n) // self.p ** v)) % self.pk
        return PadicScalar(v, u)

    def from_fraction(self, q) -> PadicScalar:
        q = Fraction(q)
        if q == 0:
            return PADIC_ZERO
        num, den = q.numerator, q.denominator
        vn, vd = _vp(abs(num), self.p), _vp(den, self.p)
        un = (num // self.p ** vn) if num > 0 else -((-num) // self.p ** vn)
        ud = den // self.p ** vd
        u = un * pow(ud, -1, self.pk) % self.pk
        return PadicScalar(vn - vd, u)

    def add(self, a: PadicScalar, b: PadicScalar) -> PadicScalar:
        if a.is_zero():
            return b
        if b.is_zero():
            return a
        if a.v > b.v:
            a, b = b, a
        gap = b.v - a.v
        if gap >= self.k:
            raise PrecisionLossError(
                f"valuation gap {gap} >= precision {self.k}: addend lost")
        if gap > 0:
            return PadicScalar(a.v, (a.u + b.u * self.p ** gap) % self.pk)
        s = (a.u + b.u) % self.pk
        if s == 0:
            raise PrecisionLossError("complete cancellation at working precision")
        if s % self.p == 0:
            raise PrecisionLossError("leading-digit cancellation loses precision")
        return PadicScalar(a.v, s)

    def neg(self, a: PadicScalar) -> PadicScalar:
        return a if a.is_zero() else PadicScalar(a.v, (-a.u) % self.pk)

    def mul(self, a: PadicScalar, b: PadicScalar) -> PadicScalar:
        if a.is_zero() or b.is_zero():
            return PADIC_ZERO
        return PadicScalar(a.v + b.v, a.u * b.u % self.pk)

    def invert(self, a: PadicScalar):
        if a.is_zero():
            return None
        return PadicScalar(-a.v, pow(a.u, -1, self.pk))


class PadicQuadratic(Semiring):
    """Truncated Q_p(sqrt(eps)); elements are (c, s) scalar pairs."""

    kind = "padic"
    is_field = True  # models a field; truncated addition is partial
    multiplicatively_cancellative = True
    has_negation = True

    def __init__(self, p: int, precision: int):
        if not isprime(p) or p < 3:
            raise SemiringSpecError("p must be an odd prime")
        if precision < 1:
            raise SemiringSpecError("precision must be >= 1")
        self.p, self.precision = p, precision
        self.epsilon = self._least_primitive_root(p)
        self.ops = _ScalarOps(p, precision)
        self._eps_scalar = self.ops.from_int(self.epsilon)
        self.zero = (PADIC_ZERO, PADIC_ZERO)
        self.one = (self.ops.from_int(1), PADIC_ZERO)

    @staticmethod
    def _least_primitive_root(p):
        return int(primitive_root(p))  # sympy returns the smallest one

    def scalar(self, x) -> tuple:
        """Embed an int or Fraction on the sqrt(eps)-free axis."""
        if isinstance(x, PadicScalar):
            return (x, PADIC_ZERO)
        if isinstance(x, Fraction):
            return (self.ops.from_fraction(x), PADIC_ZERO)
        return (self.ops.from_int(x), PADIC_ZERO)

    def add(self, a, b):
        return (self.ops.add(a[0], b[0]), self.ops.add(a[1], b[1]))

    def mul(self, a, b):
        O = self.ops
        c = O.add(O.mul(a[0], b[0]), O.mul(self._eps_scalar, O.mul(a[1], b[1])))
        s = O.add(O.mul(a[0], b[1]), O.mul(a[1], b[0]))
        return (c, s)

    def involution(self, a):
        return (a[0], self.ops.neg(a[1]))

    def norm(self, a):
        # c^2 - eps s^2 computed on scalars: the cross term of conj(a) a is
        # structurally zero, which truncated addition cannot witness, and the
        # unit parts never cancel because eps is a non-residue.
        O = self.ops
        c2 = O.mul(a[0], a[0])
        es2 = O.mul(self._eps_scalar, O.mul(a[1], a[1]))
        return (O.add(c2, O.neg(es2)), PADIC_ZERO)

    def neg(self, a):
        return (self.ops.neg(a[0]), self.ops.neg(a[1]))

    def try_invert(self, a):
        n = self.norm(a)[0]
        ninv = self.ops.invert(n)
        if ninv is None:
            return None
        return (self.ops.mul(a[0], ninv), self.ops.mul(self.ops.neg(a[1]), ninv))

    def from_int(self, n):
        return self.scalar(n)

    def sample(self, rng):
        return (self._sample_scalar(rng), self._sample_scalar(rng))

    def sample_scalar_axis(self, rng):
        return (self._sample_scalar(rng), PADIC_ZERO)

    def _sample_scalar(self, rng):
        if rng.random() < 0.1:
            return PADIC_ZERO
        v = rng.randint(-2, 3)
        u = rng.randrange(1, self.ops.pk)
        while u % self.p == 0:
            u = rng.randrange(1, self.ops.pk)
        return PadicScalar(v, u)

    # --- purity: the sign rule ------------------------------------------------

    def pure_witness(self, r):
        """Solve xi* xi = r on the scalar axis via Hensel lifting.

        Norms sit on the scalar axis and have even valuation; conversely any
        scalar p^{2m} u is the norm of p^m (c + s sqrt(eps)) with
        c^2 - eps s^2 = u solved mod p and lifted to mod p^k.
        """
        if not r[1].is_zero():
            return None
        x = r[0]
        if x.is_zero():
            return self.zero
        if x.v % 2 != 0:
            return None
        c, s = self._solve_norm_unit(x.u)
        half = x.v // 2
        return (self._shift(c, half), self._shift(s, half))

    @staticmethod
    def _shift(a: PadicScalar, dv: int) -> PadicScalar:
        return a if a.is_zero() else PadicScalar(a.v + dv, a.u)

    def _solve_norm_unit(self, u: int):
        """(c, s) scalars with c^2 - eps s^2 = u for a unit u mod p^k."""
        p, k, eps, pk = self.p, self.precision, self.epsilon, self.ops.pk
        roots = sqrt_mod(u, p, all_roots=True)
        if roots:
            c0 = min(roots)
            if c0 != 0:
                c = self._hensel(lambda c: (c * c - u), lambda c: 2 * c, c0)
                return self.ops.from_int(c), PADIC_ZERO
        # u is a non-residue: u/eps is a residue unless -? fall back to a
        # 2-variable search mod p, then lift in whichever variable is smooth.
        for s0 in range(p):
            rhs = (u + eps * s0 * s0) % p
            r = sqrt_mod(rhs, p, all_roots=True)
            if r:
                c0 = min(r)
                if c0 % p != 0:
                    c = self._hensel(lambda c: (c * c - eps * s0 * s0 - u),
                                     lambda c: 2 * c, c0)
                    return self.ops.from_int(c), self.ops.from_int(s0)
                if s0 % p != 0:
                    s = self._hensel(lambda s: (c0 * c0 - eps * s * s - u),
                                     lambda s: -2 * eps * s, s0)
                    return self.ops.from_int(c0), self.ops.from_int(s)
        raise SemiringSpecError("norm equation unsolvable; eps not primitive?")

    def _hensel(self, f, df, x0: int) -> int:
        """Lift a simple root of f mod p to mod p^k (p odd)."""
        p, k = self.p, self.precision
        x, mod = x0 % p, p
        while mod < p ** k:
            mod = min(mod * mod, p ** k)
            dfx = df(x) % mod
            x = (x - f(x) * pow(dfx, -1, mod)) % mod
        return x

    def cone_contains(self, r):
        # closure under addition of the even-order norms is the whole scalar axis
        return r[1].is_zero()

    def cone_witness(self, r):
        xi = self.pure_witness(r)
        return None if xi is None else [xi]

    def cone_description(self):
        return "scalar axis (pure part: even valuation; closure: all)"

    def sign(self, r) -> int:
        """+1 when the scalar-axis element is a norm, else -1."""
        if not r[1].is_zero():
            raise ValueError("sign is defined on the scalar axis")
        if r[0].is_zero():
            return 1
        return -1 if r[0].v % 2 else 1

    def phase_elements(self):
        return None  # enumerated per residue class mod p^k in phases.py

    def lhv_field(self):
        field = PadicScalarField(self)

        def embed(a):
            if not a[1].is_zero():
                raise ValueError("not a positive-cone element")
            return a[0]

        return field, embed

    def spec(self):
        return {"kind": self.kind, "p": self.p, "precision": self.precision,
                "epsilon": self.epsilon}

    def format_element(self, a):
        return {"c": {"v": a[0].v, "u": a[0].u}, "s": {"v": a[1].v, "u": a[1].u}}

    def parse_element(self, v):
        def scalar(d):
            u = int(d["u"]) % self.ops.pk
            return PADIC_ZERO if u == 0 else PadicScalar(int(d["v"]), u)

        return (scalar(v["c"]), scalar(v["s"]))


class PadicScalarField(Semiring):
    """The scalar axis of a PadicQuadratic as a standalone field view."""

    kind = "padic_scalar"
    is_field = True
    multiplicatively_cancellative = True
    has_negation = True

    def __init__(self, parent: PadicQuadratic):
        self.parent = parent
        self.ops = parent.ops
        self.zero = PADIC_ZERO
        self.one = self.ops.from_int(1)

    def add(self, a, b):
        return self.ops.add(a, b)

    def mul(self, a, b):
        return self.ops.mul(a, b)

    def neg(self, a):
        return self.ops.neg(a)

    def try_invert(self, a):
        return self.ops.invert(a)

    def from_int(self, n):
        return self.ops.from_int(n)

    def spec(self):
        return {"kind": self.kind, "p": self.parent.p,
                "precision": self.parent.precision}

    def format_element(self, a):
        return {"v": a.v, "u": a.u}

    def parse_element(self, v):
        return PadicScalar(int(v["v"]), int(v["u"]))
