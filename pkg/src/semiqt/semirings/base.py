"""Commutative involutive semirings: the common carrier interface.

A carrier bundles a value domain with its operations.  Element values are
plain Python objects (ints, Fractions, tuples, small frozen records); all
arithmetic goes through the owning :class:`Semiring`, which also records
capability flags used by higher layers to decide what is computable:

* ``finite_enumerable`` -- ``elements()`` yields the whole carrier;
* ``is_field`` -- every nonzero element is invertible;
* ``additively_idempotent`` -- ``x + x = x`` (relational/tropical family);
* ``multiplicatively_cancellative`` -- no zero divisors.

Everything is immutable after construction and safe to share freely.
"""

from __future__ import annotations

import functools
import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional

from ..errors import NotEnumerableError, PrecisionLossError


class Semiring:
    """Base carrier: commutative semiring with a self-inverse involution."""

    kind = "abstract"
    finite_enumerable = False
    is_field = False
    additively_idempotent = False
    multiplicatively_cancellative = False
    has_negation = False

    zero: Any
    one: Any

    # --- ring operations -------------------------------------------------

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def involution(self, a):
        """x -> x*; self-inverse homomorphism. Default: trivial."""
        return a

    def eq(self, a, b) -> bool:
        return a == b

    def neg(self, a):
        raise NotEnumerableError(f"{self.kind} has no additive inverses")

    def try_invert(self, a):
        """Multiplicative inverse of ``a`` or ``None``."""
        if self.finite_enumerable:
            for x in self.elements():
                if self.eq(self.mul(a, x), self.one):
                    return x
            return None
        raise NotImplementedError

    def is_invertible(self, a) -> bool:
        return self.try_invert(a) is not None

    # --- aggregate helpers ------------------------------------------------

    def sum(self, xs: Iterable):
        acc = self.zero
        for x in xs:
            acc = self.add(acc, x)
        return acc

    def prod(self, xs: Iterable):
        acc = self.one
        for x in xs:
            acc = self.mul(acc, x)
        return acc

    def from_int(self, n: int):
        """n * 1 (n >= 0), the canonical image of a natural number."""
        if n < 0:
            raise ValueError("from_int takes a natural number")
        acc = self.zero
        for _ in range(n):
            acc = self.add(acc, self.one)
        return acc

    def power(self, a, n: int):
        acc = self.one
        for _ in range(n):
            acc = self.mul(acc, a)
        return acc

    def norm(self, a):
        """a* a, the squared norm used by the Born rule."""
        return self.mul(self.involution(a), a)

    # --- enumeration and sampling ------------------------------------------

    def elements(self) -> list:
        raise NotEnumerableError(f"{self.kind} is not finite-enumerable")

    def iter_elements(self):
        """Streaming variant of :meth:`elements` (big finite carriers)."""
        return iter(self.elements())

    def size(self) -> Optional[int]:
        return len(self.elements()) if self.finite_enumerable else None

    def sample(self, rng):
        """A random element; used by axiom spot-checks on infinite carriers."""
        if self.finite_enumerable:
            return rng.choice(self.elements())
        raise NotImplementedError

    # --- positivity hooks (see cone.py) -------------------------------------

    def pure_witness(self, r):
        """xi with xi* xi = r, or None.  Finite carriers scan in order."""
        if self.eq(r, self.zero):
            return self.zero
        if self.finite_enumerable:
            for x in self.elements():
                if self.eq(self.norm(x), r):
                    return x
            return None
        raise NotEnumerableError(f"{self.kind} has no registered purity rule")

    def cone_contains(self, r) -> bool:
        """Closed-form membership in the positive subsemiring (infinite carriers)."""
        raise NotEnumerableError(f"{self.kind} has no registered positivity closed form")

    def cone_witness(self, r):
        """Sum-of-norms decomposition [xi_1, ..] with sum(xi*xi) = r, or None."""
        xi = self.pure_witness(r)
        return None if xi is None else [xi]

    def cone_description(self) -> str:
        return "additive closure of {x* x}"

    # --- phases -------------------------------------------------------------

    def phase_elements(self) -> Optional[list]:
        """Unit-norm elements when known in closed form; None when not enumerable."""
        if self.finite_enumerable:
            return [x for x in self.elements() if self.eq(self.norm(x), self.one)]
        return None

    # --- classical field view (for LHV solving) -----------------------------

    def lhv_field(self):
        """(field, embed) mapping positive-cone values into a field, or None."""
        return None

    # --- serialization -------------------------------------------------------

    def spec(self) -> dict:
        return {"kind": self.kind}

    def format_element(self, a):
        """JSON-compatible rendering of ``a``; inverse of :meth:`parse_element`."""
        return str(a)

    def parse_element(self, v):
        raise NotImplementedError

    # --- identity ------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Semiring) and self.spec() == other.spec()

    def __hash__(self):
        return hash(json.dumps(self.spec(), sort_keys=True))

    def __repr__(self):
        return f"<{type(self).__name__} {self.spec()}>"

    @property
    def name(self) -> str:
        return self.kind


# ---------------------------------------------------------------------------
# Axiom checking
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AxiomCheck:
    name: str
    passed: bool
    witness: Optional[tuple] = None
    samples: int = 0
    skipped: int = 0


@dataclass(frozen=True)
class AxiomReport:
    semiring_spec: dict
    exhaustive: bool
    checks: tuple

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self):
        return [c for c in self.checks if not c.passed]


_EXHAUSTIVE_LIMIT = 32  # carriers up to this size get every pair/triple


def _law_runner(tuples, law: Callable):
    """Run a law over element tuples; precision-raising samples are skipped."""
    tested = skipped = 0
    witness = None
    for args in tuples:
        try:
            ok = law(*args)
        except PrecisionLossError:
            skipped += 1
            continue
        tested += 1
        if not ok:
            witness = args
            break
    return tested, skipped, witness


def check_axioms(semiring: Semiring, sample_budget: int = 200, rng=None) -> AxiomReport:
    """Spot-check the semiring and involution laws.

    Exhaustive for small finite carriers, randomized otherwise.  Failures are
    reported with witnesses, never raised; samples that hit a truncation
    limit (p-adic precision loss) count as skipped.
    """
    import random

    S = semiring
    exhaustive = S.finite_enumerable and (S.size() or 0) ** 3 <= _EXHAUSTIVE_LIMIT ** 3
    if exhaustive:
        elems = S.elements()
        pairs = list(itertools.product(elems, repeat=2))
        triples = list(itertools.product(elems, repeat=3))
        singles = [(x,) for x in elems]
    else:
        rng = rng or random.Random(0)
        singles = [(S.sample(rng),) for _ in range(sample_budget)]
        pairs = [(S.sample(rng), S.sample(rng)) for _ in range(sample_budget)]
        triples = [(S.sample(rng), S.sample(rng), S.sample(rng)) for _ in range(sample_budget)]

    laws = [
        ("add-associativity", triples,
         lambda a, b, c: S.eq(S.add(S.add(a, b), c), S.add(a, S.add(b, c)))),
        ("add-commutativity", pairs, lambda a, b: S.eq(S.add(a, b), S.add(b, a))),
        ("add-zero-identity", singles, lambda a: S.eq(S.add(a, S.zero), a)),
        ("mul-associativity", triples,
         lambda a, b, c: S.eq(S.mul(S.mul(a, b), c), S.mul(a, S.mul(b, c)))),
        ("mul-commutativity", pairs, lambda a, b: S.eq(S.mul(a, b), S.mul(b, a))),
        ("mul-one-identity", singles, lambda a: S.eq(S.mul(a, S.one), a)),
        ("distributivity", triples,
         lambda a, b, c: S.eq(S.mul(a, S.add(b, c)), S.add(S.mul(a, b), S.mul(a, c)))),
        ("zero-absorbing", singles, lambda a: S.eq(S.mul(a, S.zero), S.zero)),
        ("involution-self-inverse", singles,
         lambda a: S.eq(S.involution(S.involution(a)), a)),
        ("involution-add-hom", pairs,
         lambda a, b: S.eq(S.involution(S.add(a, b)), S.add(S.involution(a), S.involution(b)))),
        ("involution-mul-hom", pairs,
         lambda a, b: S.eq(S.involution(S.mul(a, b)), S.mul(S.involution(a), S.involution(b)))),
        ("involution-fixes-units", [()],
         lambda: S.eq(S.involution(S.zero), S.zero) and S.eq(S.involution(S.one), S.one)),
    ]

    checks = []
    for name, tuples, law in laws:
        tested, skipped, witness = _law_runner(tuples, law)
        checks.append(AxiomCheck(name, witness is None, witness, tested, skipped))
    return AxiomReport(S.spec(), exhaustive, tuple(checks))


# ---------------------------------------------------------------------------
# Tropicality (addition selects one of its arguments)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TropicalCheck:
    is_tropical: bool
    counterexample: Optional[tuple]
    samples: int


def check_tropical(semiring: Semiring, sample_budget: int = 500, rng=None) -> TropicalCheck:
    """Does ``a + b in {a, b}`` hold on every sampled pair?

    For finite carriers the check is exhaustive.  When it holds, the induced
    order is available through :func:`tropical_leq` / :func:`tropical_min`.
    """
    import random

    S = semiring
    if S.finite_enumerable:
        pairs = list(itertools.product(S.elements(), repeat=2))
    else:
        rng = rng or random.Random(0)
        pairs = [(S.sample(rng), S.sample(rng)) for _ in range(sample_budget)]
    for a, b in pairs:
        s = S.add(a, b)
        if not (S.eq(s, a) or S.eq(s, b)):
            return TropicalCheck(False, (a, b, s), len(pairs))
    return TropicalCheck(True, None, len(pairs))


def tropical_min(semiring: Semiring, a, b):
    return semiring.add(a, b)


def tropical_leq(semiring: Semiring, a, b) -> bool:
    """a <= b in the order induced by selective addition (a+b = a)."""
    return semiring.eq(semiring.add(a, b), a)
