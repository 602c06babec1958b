"""Finite fields and their quadratic extensions.

F_{p^n} is represented as polynomial residues modulo a deterministically
chosen monic irreducible: the smallest one when the coefficient vector
(most significant = highest degree) is read as a base-p integer.  Elements
are encoded as integers sum(c_i p^i) over the little-endian coefficients.

The quadratic extension F_{p^n}(sqrt(eps)) keeps pairs (a, b) = a + b sqrt(eps)
with the Galois conjugation (a, b) -> (a, -b); eps defaults to the smallest
element (same encoding order) of multiplicative order p^n - 1.
"""

from __future__ import annotations

import itertools

from sympy import factorint, isprime

from .base import Semiring
from ..errors import SemiringSpecError


# --- polynomial helpers (little-endian coefficient lists over Z_p) ----------

def _poly_mul_mod(a, b, modulus, p):
    n = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # reduce x^n := -(modulus without leading coeff)
    for d in range(len(prod) - 1, n - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for i in range(n):
                prod[d - n + i] = (prod[d - n + i] - c * modulus[i]) % p
    out = prod[:n]
    return out + [0] * (n - len(out))


def _encode(coeffs, p):
    v = 0
    for c in reversed(coeffs):
        v = v * p + c
    return v


def _decode(v, p, n):
    out = []
    for _ in range(n):
        v, r = divmod(v, p)
        out.append(r)
    return out


def _is_irreducible(coeffs, p):
    """Trial division of a monic polynomial by all lower-degree monics."""
    n = len(coeffs) - 1
    if n == 1:
        return True
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if _poly_divides(divisor, coeffs, p):
                return False
    return True


def _poly_divides(d, f, p):
    rem = list(f)
    dd = len(d) - 1
    inv_lead = pow(d[-1], -1, p)
    while len(rem) - 1 >= dd and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < dd:
            break
        factor = rem[-1] * inv_lead % p
        shift = len(rem) - 1 - dd
        for i, di in enumerate(d):
            rem[shift + i] = (rem[shift + i] - factor * di) % p
    return not any(rem)


def default_modulus(p: int, n: int) -> list:
    """Smallest monic irreducible of degree n (coefficients little-endian)."""
    for enc in range(p ** n):
        coeffs = _decode(enc, p, n) + [1]
        if _is_irreducible(coeffs, p):
            return coeffs
    raise SemiringSpecError(f"no irreducible polynomial of degree {n} over F_{p}")


class _FiniteFieldBase(Semiring):
    """Shared machinery: int-encoded elements, order computation, epsilon."""

    finite_enumerable = True
    is_field = True
    multiplicatively_cancellative = True
    has_negation = True

    p: int
    n: int

    def elements(self):
        if not hasattr(self, "_elements"):
            self._elements = list(range(self.order_q()))
        return self._elements

    def order_q(self) -> int:
        return self.p ** self.n

    def size(self):
        return self.order_q()

    def sample(self, rng):
        return rng.randrange(self.order_q())

    def try_invert(self, a):
        if a == 0:
            return None
        return self.power_fast(a, self.order_q() - 2)

    def power_fast(self, a, e: int):
        acc, base = self.one, a
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def multiplicative_order(self, a) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        o = self.order_q() - 1
        for f in factorint(o):
            while o % f == 0 and self.power_fast(a, o // f) == self.one:
                o //= f
        return o

    def primitive_element(self):
        """Smallest element (encoding order) generating the unit group."""
        target = self.order_q() - 1
        for x in range(1, self.order_q()):
            if self.multiplicative_order(x) == target:
                return x
        raise SemiringSpecError("no primitive element found")  # unreachable

    def is_square(self, a) -> bool:
        if a == 0:
            return True
        return self.power_fast(a, (self.order_q() - 1) // 2) == self.one

    def lhv_field(self):
        return self, lambda a: a

    def format_element(self, a):
        return _decode(a, self.p, self.n)

    def parse_element(self, v):
        if isinstance(v, int):
            return v % self.order_q()
        coeffs = [int(c) % self.p for c in v]
        if len(coeffs) > self.n:
            raise ValueError("coefficient list too long")
        return _encode(coeffs + [0] * (self.n - len(coeffs)), self.p)


class PrimeField(_FiniteFieldBase):
    kind = "finite_field"

    def __init__(self, p: int):
        if not isprime(p):
            raise SemiringSpecError(f"{p} is not prime")
        self.p = p
        self.n = 1
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def try_invert(self, a):
        return None if a == 0 else pow(a, -1, self.p)

    def from_int(self, n):
        return n % self.p

    def spec(self):
        return {"kind": self.kind, "p": self.p, "n": 1}


class ParitySemiring(PrimeField):
    """Integers mod 2: superposition by symmetric difference."""

    kind = "parity"

    def __init__(self):
        super().__init__(2)

    def spec(self):
        return {"kind": self.kind}


class ExtensionField(_FiniteFieldBase):
    kind = "finite_field"

    def __init__(self, p: int, n: int, modulus: list | None = None):
        if not isprime(p):
            raise SemiringSpecError(f"{p} is not prime")
        if n < 2:
            raise SemiringSpecError("extension degree must be >= 2; use PrimeField")
        self.p, self.n = p, n
        self.modulus = list(modulus) if modulus is not None else default_modulus(p, n)
        if len(self.modulus) != n + 1 or self.modulus[-1] != 1:
            raise SemiringSpecError("modulus must be monic of degree n")
        if not _is_irreducible(self.modulus, p):
            raise SemiringSpecError("modulus polynomial is reducible")
        self.zero = 0
        self.one = 1
        self._mod_tail = self.modulus[:-1]

    def add(self, a, b):
        ca, cb = _decode(a, self.p, self.n), _decode(b, self.p, self.n)
        return _encode([(x + y) % self.p for x, y in zip(ca, cb)], self.p)

    def neg(self, a):
        return _encode([(-x) % self.p for x in _decode(a, self.p, self.n)], self.p)

    def mul(self, a, b):
        ca, cb = _decode(a, self.p, self.n), _decode(b, self.p, self.n)
        return _encode(_poly_mul_mod(ca, cb, self.modulus, self.p), self.p)

    def from_int(self, n):
        return n % self.p

    def spec(self):
        return {"kind": self.kind, "p": self.p, "n": self.n, "modulus": self.modulus}


def finite_field(p: int, n: int = 1) -> _FiniteFieldBase:
    return PrimeField(p) if n == 1 else ExtensionField(p, n)


class QuadraticExtension(Semiring):
    """F_{p^n}(sqrt(eps)) with Galois conjugation as the involution."""

    kind = "quadratic_extension"
    finite_enumerable = True
    is_field = True
    multiplicatively_cancellative = True
    has_negation = True

    def __init__(self, base: _FiniteFieldBase, epsilon=None):
        self.base = base
        q = base.order_q()
        if epsilon is None:
            epsilon = base.primitive_element()
        else:
            if base.multiplicative_order(epsilon) != q - 1:
                raise SemiringSpecError("epsilon is not a primitive element")
        self.epsilon = epsilon
        if base.is_square(epsilon):
            # cannot happen for primitive eps over odd q; kept as a guard
            raise SemiringSpecError("x^2 - eps is reducible: eps is a square")
        self.zero = (base.zero, base.zero)
        self.one = (base.one, base.zero)

    @property
    def p(self):
        return self.base.p

    @property
    def n(self):
        return self.base.n

    def order_q(self) -> int:
        return self.base.order_q() ** 2

    def size(self):
        return self.order_q()

    def scalar(self, a):
        """Embed a base-field element on the sqrt(eps)-free axis."""
        return (a, self.base.zero)

    def add(self, a, b):
        B = self.base
        return (B.add(a[0], b[0]), B.add(a[1], b[1]))

    def mul(self, a, b):
        B, eps = self.base, self.epsilon
        x = B.add(B.mul(a[0], b[0]), B.mul(eps, B.mul(a[1], b[1])))
        y = B.add(B.mul(a[0], b[1]), B.mul(a[1], b[0]))
        return (x, y)

    def involution(self, a):
        return (a[0], self.base.neg(a[1]))

    def neg(self, a):
        B = self.base
        return (B.neg(a[0]), B.neg(a[1]))

    def try_invert(self, a):
        B = self.base
        n = self.norm(a)[0]  # x^2 - eps y^2, a base-field element
        inv = B.try_invert(n)
        if inv is None:
            return None
        return (B.mul(a[0], inv), B.mul(B.neg(a[1]), inv))

    def from_int(self, n):
        return (self.base.from_int(n), self.base.zero)

    def elements(self):
        # scalar axis (b = 0) first, so witness searches hit base-field
        # representatives before mixed elements
        if not hasattr(self, "_elements"):
            base = self.base.elements()
            self._elements = [(a, b) for b in base for a in base]
        return self._elements

    def iter_elements(self):
        base = self.base.elements()
        for b in base:
            for a in base:
                yield (a, b)

    def sample(self, rng):
        return (self.base.sample(rng), self.base.sample(rng))

    def lhv_field(self):
        def embed(a):
            if a[1] != self.base.zero:
                raise ValueError("not a positive-cone element")
            return a[0]

        return self.base, embed

    def cone_description(self):
        return "base subfield (sqrt(eps)-part zero)"

    def spec(self):
        base_spec = self.base.spec()
        out = {"kind": self.kind, "p": self.base.p, "n": self.base.n,
               "epsilon": self.base.format_element(self.epsilon)}
        if "modulus" in base_spec:
            out["base_modulus"] = base_spec["modulus"]
        return out

    def format_element(self, a):
        return [self.base.format_element(a[0]), self.base.format_element(a[1])]

    def parse_element(self, v):
        return (self.base.parse_element(v[0]), self.base.parse_element(v[1]))


def quadratic_extension(p: int, n: int = 1, epsilon=None) -> QuadraticExtension:
    base = finite_field(p, n)
    if epsilon is not None:
        epsilon = base.parse_element(epsilon)
    return QuadraticExtension(base, epsilon)
