"""Classical structures, group algebras and complementarity checks.

A Frobenius algebra here is a multiplication d x d^2 and a unit d x 1 whose
daggers provide the comultiplication/counit.  Two families are built:

* the basis-copying structure (mult merges equal basis labels, unit is the
  all-ones column), which is special and commutative;
* the algebra of a finite abelian group (mult linearly extends the group
  operation, unit is the identity's basis state), which satisfies
  mult . dagger(mult) = |G| . id instead of speciality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .errors import NotNormalizableError
from .matrices import (Matrix, basis_column, dagger, identity, kron, matmul,
                       scalar_mul, swap_matrix, zeros)
from .semirings import Semiring, decompose_pure


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Product of cyclic groups; elements are residue tuples."""

    factors: tuple

    def __post_init__(self):
        if any(f < 1 for f in self.factors):
            raise ValueError("cyclic factor orders must be >= 1")

    @staticmethod
    def cyclic(n: int) -> "FiniteAbelianGroup":
        return FiniteAbelianGroup((n,))

    @staticmethod
    def of(*factors: int) -> "FiniteAbelianGroup":
        return FiniteAbelianGroup(tuple(factors))

    @property
    def order(self) -> int:
        out = 1
        for f in self.factors:
            out *= f
        return out

    @property
    def identity(self) -> tuple:
        return (0,) * len(self.factors)

    def elements(self) -> list:
        return list(itertools.product(*(range(f) for f in self.factors)))

    def op(self, a: tuple, b: tuple) -> tuple:
        return tuple((x + y) % f for x, y, f in zip(a, b, self.factors))

    def inverse(self, a: tuple) -> tuple:
        return tuple((-x) % f for x, f in zip(a, self.factors))

    def scale(self, n: int, a: tuple) -> tuple:
        return tuple((n * x) % f for x, f in zip(a, self.factors))

    def index(self, a: tuple) -> int:
        i = 0
        for x, f in zip(a, self.factors):
            i = i * f + x
        return i

    def element_order(self, a: tuple) -> int:
        o, g = 1, a
        while g != self.identity:
            g = self.op(g, a)
            o += 1
        return o

    def subgroups(self) -> list:
        """All subgroups, as sorted element tuples (desk scale)."""
        elems = self.elements()
        found = {tuple([self.identity])}
        # close every generating set of size <= 3
        for r in range(1, min(3, len(elems)) + 1):
            for gens in itertools.combinations(elems, r):
                found.add(tuple(sorted(self.generate(gens))))
        return [list(s) for s in sorted(found)]

    def generate(self, gens) -> set:
        out = {self.identity}
        frontier = [self.identity]
        while frontier:
            new = []
            for h in frontier:
                for g in gens:
                    x = self.op(h, g)
                    if x not in out:
                        out.add(x)
                        new.append(x)
            frontier = new
        return out


@dataclass(frozen=True)
class FrobeniusAlgebra:
    """mult: d x d^2, unit: d x 1; comult/counit via dagger."""

    semiring: Semiring
    dim: int
    mult: Matrix
    unit: Matrix
    group: Optional[FiniteAbelianGroup] = None

    @property
    def comult(self) -> Matrix:
        return dagger(self.mult)

    @property
    def counit(self) -> Matrix:
        return dagger(self.unit)


def classical_structure(semiring: Semiring, d: int) -> FrobeniusAlgebra:
    """The copying structure of the computational basis on S^d."""
    S = semiring
    z, o = S.zero, S.one
    ent = [z] * (d * d * d)
    for x in range(d):
        ent[x * d * d + x * d + x] = o  # mult |x,x> = |x>
    mult = Matrix(S, d, d * d, tuple(ent))
    unit = Matrix(S, d, 1, (o,) * d)
    return FrobeniusAlgebra(S, d, mult, unit)


def group_algebra(semiring: Semiring, group: FiniteAbelianGroup) -> FrobeniusAlgebra:
    """mult |g,h> = |g h>, unit = |identity>."""
    S = semiring
    d = group.order
    elems = group.elements()
    z, o = S.zero, S.one
    ent = [z] * (d * d * d)
    for i, g in enumerate(elems):
        for j, h in enumerate(elems):
            k = group.index(group.op(g, h))
            ent[k * d * d + i * d + j] = o
    mult = Matrix(S, d, d * d, tuple(ent))
    unit = basis_column(S, d, group.index(group.identity))
    return FrobeniusAlgebra(S, d, mult, unit, group=group)


def antipode_matrix(semiring: Semiring, group: FiniteAbelianGroup) -> Matrix:
    elems = group.elements()
    d = group.order
    z, o = semiring.zero, semiring.one
    ent = [z] * (d * d)
    for j, g in enumerate(elems):
        ent[group.index(group.inverse(g)) * d + j] = o
    return Matrix(semiring, d, d, tuple(ent))


def normalisation_witness(semiring: Semiring, group: FiniteAbelianGroup):
    """Invertible z with z* z = |G| . 1, searched in carrier order, or None."""
    S = semiring
    target = S.from_int(group.order)
    if S.finite_enumerable:
        for x in S.elements():
            if S.eq(S.norm(x), target) and S.try_invert(x) is not None:
                return x
        return None
    z = decompose_pure(S, target)
    if z is not None and S.try_invert(z) is not None:
        return z
    return None


# ---------------------------------------------------------------------------
# Law checking
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LawCheck:
    name: str
    passed: bool
    witness: Optional[str] = None


@dataclass(frozen=True)
class FrobeniusReport:
    checks: tuple
    speciality_scalar: object = None

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _law(name, lhs: Matrix, rhs: Matrix) -> LawCheck:
    if lhs == rhs:
        return LawCheck(name, True)
    for i in range(lhs.rows):
        for j in range(lhs.cols):
            if not lhs.semiring.eq(lhs[i, j], rhs[i, j]):
                fmt = lhs.semiring.format_element
                return LawCheck(name, False,
                                f"entry ({i},{j}): {fmt(lhs[i, j])} != {fmt(rhs[i, j])}")
    return LawCheck(name, False, "shape mismatch")


def _scalar_multiple_of_identity(m: Matrix):
    """The scalar c with m = c . id, or None."""
    S = m.semiring
    c = m[0, 0]
    for i in range(m.rows):
        for j in range(m.cols):
            want = c if i == j else S.zero
            if not S.eq(m[i, j], want):
                return None
    return c


def check_frobenius(algebra: FrobeniusAlgebra) -> FrobeniusReport:
    """Associativity, units, commutativity, the Frobenius law, speciality."""
    S, d = algebra.semiring, algebra.dim
    mu, eta = algebra.mult, algebra.unit
    delta = algebra.comult
    idd = identity(S, d)

    checks = [
        _law("associativity",
             matmul(mu, kron(mu, idd)), matmul(mu, kron(idd, mu))),
        _law("left-unit", matmul(mu, kron(eta, idd)), idd),
        _law("right-unit", matmul(mu, kron(idd, eta)), idd),
        _law("commutativity", matmul(mu, swap_matrix(S, d, d)), mu),
        _law("frobenius",
             matmul(kron(idd, mu), kron(delta, idd)), matmul(delta, mu)),
        _law("frobenius-mirror",
             matmul(kron(mu, idd), kron(idd, delta)), matmul(delta, mu)),
    ]
    scalar = _scalar_multiple_of_identity(matmul(mu, delta))
    checks.append(LawCheck("speciality-scalar-multiple", scalar is not None,
                           None if scalar is not None else "mult.comult not scalar*id"))
    return FrobeniusReport(tuple(checks), scalar)


@dataclass(frozen=True)
class ComplementarityReport:
    checks: tuple
    witness: object = None
    witness_found: bool = False

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def check_strong_complementarity(copy_alg: FrobeniusAlgebra,
                                 group_alg: FrobeniusAlgebra) -> ComplementarityReport:
    """Bialgebra, Hopf (group-inverse antipode) and unit-copying laws.

    The laws are exact matrix equations for the unnormalized group algebra.
    Pairs whose group order is not invertible in the carrier are rejected
    with NotNormalizableError; the normalisation witness z (z* z = |G|) is
    reported when the carrier contains one.
    """
    if copy_alg.semiring != group_alg.semiring or copy_alg.dim != group_alg.dim:
        raise ValueError("structures must share carrier and dimension")
    if group_alg.group is None:
        raise ValueError("second argument must be a group algebra")
    S, d, G = copy_alg.semiring, copy_alg.dim, group_alg.group

    if S.try_invert(S.from_int(G.order)) is None:
        raise NotNormalizableError(
            f"|G| = {G.order} is not invertible in {S.kind}")
    z = normalisation_witness(S, G)

    delta_z, eps_z = copy_alg.comult, copy_alg.counit
    mu_x, eta_x = group_alg.mult, group_alg.unit
    idd = identity(S, d)
    sw = swap_matrix(S, d, d)

    bialgebra_rhs = matmul(kron(mu_x, mu_x),
                           matmul(kron(idd, kron(sw, idd)),
                                  kron(delta_z, delta_z)))
    s = antipode_matrix(S, G)
    checks = (
        _law("bialgebra", matmul(delta_z, mu_x), bialgebra_rhs),
        _law("counit-on-mult", matmul(eps_z, mu_x), kron(eps_z, eps_z)),
        _law("copy-of-unit", matmul(delta_z, eta_x), kron(eta_x, eta_x)),
        _law("counit-on-unit", matmul(eps_z, eta_x), identity(S, 1)),
        _law("hopf", matmul(mu_x, matmul(kron(s, idd), delta_z)),
             matmul(eta_x, eps_z)),
    )
    return ComplementarityReport(checks, z, z is not None)
