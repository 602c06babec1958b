"""Phase groups, multiplicative characters, Fourier sampling, Mermin feasibility.

The phase group of a carrier is its set of unit-norm elements under
multiplication.  Finite carriers are enumerated outright; the signed
rationals contribute {1, -1}; the truncated p-adic extension is enumerated
per residue class mod p^k.  Cyclic structure is recovered by an
element-order census matched against candidate invariant-factor chains.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from sympy import factorint

from .errors import BudgetExceededError, NotEnumerableError, OracleError
from .frobenius import FiniteAbelianGroup
from .linsolve import field_rank
from .matrices import Matrix, identity, matmul
from .semirings import PadicQuadratic, Semiring, enumeration_budget


@dataclass(frozen=True)
class PhaseGroup:
    """Unit-norm elements with their multiplication.

    ``elements`` are carrier values, except for the p-adic carrier where they
    are residue pairs (c, s) mod ``modulus`` solving c^2 - eps s^2 = 1.
    """

    semiring: Semiring
    elements: tuple
    mul: Callable
    identity: object
    cyclic_factors: tuple
    modulus: Optional[int] = None

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_cyclic(self) -> bool:
        return len(self.cyclic_factors) <= 1

    def element_order(self, x) -> int:
        o, g = 1, x
        while g != self.identity:
            g = self.mul(g, x)
            o += 1
        return o

    def power(self, x, e: int):
        acc = self.identity
        for _ in range(e):
            acc = self.mul(acc, x)
        return acc

    def to_json(self):
        if self.modulus is None:
            elems = [self.semiring.format_element(x) for x in self.elements]
        else:
            elems = [list(x) for x in self.elements]
        return {"order": self.order, "cyclic_factors": list(self.cyclic_factors),
                "elements": elems}


def _invariant_factors(elements, mul, identity_el) -> tuple:
    """Invariant factor chain matched against the x^k = e census."""
    n = len(elements)
    orders = []
    for x in elements:
        o, g = 1, x
        while g != identity_el:
            g = mul(g, x)
            o += 1
        orders.append(o)
    divisors = [k for k in range(1, n + 1) if n % k == 0]
    census = {k: sum(1 for o in orders if k % o == 0) for k in divisors}

    def chains(rem, max_f):
        # descending divisor chains d_1 >= d_2 >= ... with d_{i+1} | d_i,
        # i.e. invariant-factor multisets
        if rem == 1:
            yield []
            return
        for d in divisors:
            if d > 1 and rem % d == 0 and max_f % d == 0:
                for rest in chains(rem // d, d):
                    yield [d] + rest

    import math

    # for an abelian product of Z_f the census of x^k = e is prod gcd(k, f)
    for chain in chains(n, n):  # descending; invariant factors want ascending
        cand = tuple(sorted(chain))
        if all(census[k] == _product(math.gcd(k, f) for f in cand)
               for k in divisors):
            return cand
    raise ValueError("element census matches no abelian group; not abelian?")


def _product(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def enumerate_phases(semiring: Semiring) -> PhaseGroup:
    """All solutions of xi* xi = 1 with their group structure."""
    S = semiring
    if isinstance(S, PadicQuadratic):
        return _padic_phase_group(S)
    if S.finite_enumerable:
        budget = enumeration_budget()
        if (S.size() or 0) > budget:
            raise BudgetExceededError(
                f"carrier size {S.size()} exceeds budget {budget}")
        one = S.one
        elems = tuple(x for x in S.iter_elements() if S.eq(S.norm(x), one))
    else:
        closed = S.phase_elements()
        if closed is None:
            raise NotEnumerableError(
                f"{S.kind}: phase group not enumerable (membership test only)")
        elems = tuple(closed)
    factors = _invariant_factors(elems, S.mul, S.one)
    return PhaseGroup(S, elems, S.mul, S.one, factors)


def _padic_phase_group(S: PadicQuadratic) -> PhaseGroup:
    p, k = S.p, S.precision
    pk = p ** k
    eps = S.epsilon
    if pk * pk > enumeration_budget():
        raise BudgetExceededError(f"p^2k = {pk * pk} exceeds budget")
    elems = tuple((c, s) for c in range(pk) for s in range(pk)
                  if (c * c - eps * s * s) % pk == 1 % pk)

    def mul(a, b):
        return ((a[0] * b[0] + eps * a[1] * b[1]) % pk,
                (a[0] * b[1] + a[1] * b[0]) % pk)

    factors = _invariant_factors(elems, mul, (1 % pk, 0))
    return PhaseGroup(S, elems, mul, (1 % pk, 0), factors, modulus=pk)


# ---------------------------------------------------------------------------
# Phase gates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PhaseGateGroup:
    semiring: Semiring
    dim: int
    order: int
    cyclic_factors: tuple
    checks: tuple  # (gate description, unitary, slides through copy, fixes <0|)

    @property
    def all_verified(self) -> bool:
        return all(u and s and f for _, u, s, f in self.checks)


def phase_gate_group(semiring: Semiring, d: int,
                     verify_limit: int = 64) -> PhaseGateGroup:
    """Diagonal unitaries diag(1, xi_2, ..., xi_d) over the phase group.

    Verifies (up to ``verify_limit`` gates) unitarity, commutation with the
    basis-copying multiplication, and preservation of the first basis effect.
    """
    from .frobenius import classical_structure
    from .matrices import dagger, kron

    S = semiring
    phases = enumerate_phases(S)
    if phases.modulus is not None:
        raise NotEnumerableError(
            "p-adic phases are residue classes; gate matrices are not exact carrier elements")
    order = phases.order ** (d - 1)
    factors = tuple(sorted(phases.cyclic_factors * (d - 1)))

    copy_mult = classical_structure(S, d).mult
    checks = []
    for combo in itertools.islice(
            itertools.product(phases.elements, repeat=d - 1), verify_limit):
        diag = (S.one,) + combo
        u = Matrix(S, d, d, tuple(diag[i] if i == j else S.zero
                                  for i in range(d) for j in range(d)))
        unitary = matmul(dagger(u), u) == identity(S, d)
        slides = (matmul(copy_mult, kron(u, identity(S, d)))
                  == matmul(u, copy_mult))
        fixes = S.eq(u[0, 0], S.one)
        checks.append((S.format_element(combo[0]) if combo else "id",
                       unitary, slides, fixes))
    return PhaseGateGroup(S, d, order, factors, tuple(checks))


# ---------------------------------------------------------------------------
# Characters and Fourier bases
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Character:
    group: FiniteAbelianGroup
    images: tuple  # phase element per cyclic factor generator
    semiring: Semiring

    def __call__(self, g: tuple):
        S = self.semiring
        acc = S.one
        for xi, gi in zip(self.images, g):
            for _ in range(gi):
                acc = S.mul(acc, xi)
        return acc

    def is_trivial(self) -> bool:
        S = self.semiring
        return all(S.eq(xi, S.one) for xi in self.images)


def multiplicative_characters(group: FiniteAbelianGroup,
                              semiring: Semiring) -> list:
    """All homomorphisms from the group into the carrier's phase group."""
    S = semiring
    phases = enumerate_phases(S)
    if phases.modulus is not None:
        raise NotEnumerableError("character values must be carrier elements")
    orders = {xi: phases.element_order(xi) for xi in phases.elements}
    per_factor = [[xi for xi in phases.elements if m % orders[xi] == 0]
                  for m in group.factors]
    return [Character(group, images, S)
            for images in itertools.product(*per_factor)]


def character_matrix(chars: Sequence[Character],
                     group: FiniteAbelianGroup, semiring: Semiring) -> Matrix:
    elems = group.elements()
    return Matrix.from_rows(semiring,
                            [[chi(g) for g in elems] for chi in chars])


def has_fourier_basis(group: FiniteAbelianGroup, semiring: Semiring) -> bool:
    """Enough unitary multiplicative characters to span S^|G|."""
    S = semiring
    chars = multiplicative_characters(group, S)
    if len(chars) != group.order:
        return False
    m = character_matrix(chars, group, S)
    if S.is_field:
        rows = [list(m.row(i)) for i in range(m.rows)]
        return field_rank(S, rows) == group.order
    if group.order == 1:
        return S.try_invert(m[0, 0]) is not None
    return False


def fourier_divisibility_criterion(group: FiniteAbelianGroup,
                                   phase_order: int) -> bool:
    """Primary cyclic factors must each divide the phase-group order."""
    for f in group.factors:
        for prime, e in factorint(f).items():
            if phase_order % prime ** e != 0:
                return False
    return True


# ---------------------------------------------------------------------------
# Abelian hidden subgroup simulation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HSPResult:
    group: FiniteAbelianGroup
    annihilator: tuple  # exponent tuples = group elements indexing characters
    recovered: tuple    # the hidden subgroup, sorted
    generators: tuple
    branch_weights: tuple  # (label, weight in R) per measurement branch


def _canonical_generators(group: FiniteAbelianGroup, phases: PhaseGroup):
    """Phase zeta_i of order exactly m_i per cyclic factor (needs m_i | order)."""
    gens = []
    for m in group.factors:
        cand = [xi for xi in phases.elements if phases.element_order(xi) == m]
        if not cand:
            raise NotEnumerableError(
                f"phase group has no element of order {m}; no Fourier basis")
        gens.append(cand[0])
    return gens


def run_abelian_hsp(group: FiniteAbelianGroup, semiring: Semiring,
                    oracle: Callable) -> HSPResult:
    """Exact Fourier sampling over every measurement branch.

    The oracle must be constant on the cosets of a hidden subgroup and
    distinct across cosets (checked exhaustively).  The uniform superposition
    is correlated with the oracle register; for each label branch, the
    character transform is applied and the support read off: it is the
    annihilator of the hidden subgroup, from which the subgroup returns as
    the joint kernel.
    """
    S = semiring
    elems = group.elements()
    labels = {g: oracle(g) for g in elems}
    _check_coset_oracle(group, labels)

    phases = enumerate_phases(S)
    gens = _canonical_generators(group, phases)

    def chi(a: tuple, g: tuple):
        acc = S.one
        for zeta, ai, gi in zip(gens, a, g):
            e = (ai * gi) % phases.element_order(zeta)
            for _ in range(e):
                acc = S.mul(acc, zeta)
        return acc

    label_values = sorted(set(labels.values()), key=repr)
    support = None
    branch_weights = []
    for lab in label_values:
        coset = [g for g in elems if labels[g] == lab]
        weight = S.sum(S.norm(S.one) for _ in coset)
        branch_weights.append((lab, weight))
        # amplitude at character a: sum over coset of chi(a, g)*
        sup = []
        for a in elems:
            amp = S.sum(S.involution(chi(a, g)) for g in coset)
            if not S.eq(amp, S.zero):
                sup.append(a)
        sup = tuple(sup)
        if support is None:
            support = sup
        elif support != sup:
            raise OracleError("branches disagree on the annihilator; oracle invalid")

    recovered = tuple(g for g in elems
                      if all(S.eq(chi(a, g), S.one) for a in support))
    return HSPResult(group, support, recovered,
                     _minimal_generators(group, recovered), tuple(branch_weights))


def _check_coset_oracle(group: FiniteAbelianGroup, labels: dict):
    base = labels[group.identity]
    h = {g for g, lab in labels.items() if lab == base}
    for a in h:
        for b in h:
            if group.op(a, group.inverse(b)) not in h:
                raise OracleError("identity label class is not a subgroup")
    classes = {}
    for g, lab in labels.items():
        classes.setdefault(lab, set()).add(g)
    for lab, cls in classes.items():
        rep = next(iter(cls))
        coset = {group.op(rep, x) for x in h}
        if cls != coset:
            raise OracleError(f"label {lab!r} class is not a coset of the hidden subgroup")


def _minimal_generators(group: FiniteAbelianGroup, subgroup: tuple) -> tuple:
    gens = []
    generated = {group.identity}
    for g in sorted(subgroup, key=lambda x: (group.element_order(x), x), reverse=True):
        if g not in generated:
            gens.append(g)
            generated = group.generate(gens)
        if len(generated) == len(subgroup):
            break
    return tuple(sorted(gens))


# ---------------------------------------------------------------------------
# Mermin-style feasibility
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MerminWitness:
    q: int
    modulus: int          # p^n + 1
    classical_generator: tuple
    equation_rhs: tuple   # target of q . y = rhs in (Z_modulus)^(q-1)
    solution: tuple       # y with q . y = rhs in the phase-gate group
    classical_subgroup: tuple


@dataclass(frozen=True)
class MerminResult:
    p: int
    n: int
    modulus: int
    feasible: bool
    witness: Optional[MerminWitness]


def mermin_feasible(p: int, n: int = 1) -> MerminResult:
    """Non-trivial phase-gate equation systems exist iff p^n + 1 is not
    square-free; the witness carries the equation, its solution, and the
    classical subgroup where it has none."""
    from sympy import isprime

    if not isprime(p) or p == 2:
        raise ValueError("p must be an odd prime")
    modulus = p ** n + 1
    square_prime = None
    for prime, e in sorted(factorint(modulus).items()):
        if e >= 2:
            square_prime = prime
            break
    if square_prime is None:
        return MerminResult(p, n, modulus, False, None)

    q = square_prime
    gen = tuple((j * modulus // q) % modulus for j in range(1, q))
    sol = tuple((j * modulus // (q * q)) % modulus for j in range(1, q))
    subgroup = tuple(tuple((t * g) % modulus for g in gen) for t in range(q))

    # q . sol = gen in (Z_modulus)^(q-1)
    if tuple((q * y) % modulus for y in sol) != gen:
        raise RuntimeError("mermin witness fails its defining equation")
    # no solution inside the classical subgroup: q . (t gen) = 0 != gen
    for t in range(q):
        if tuple((q * t * g) % modulus for g in gen) == gen:
            raise RuntimeError("equation unexpectedly solvable in the classical subgroup")
    return MerminResult(p, n, modulus, True,
                        MerminWitness(q, modulus, gen, gen, sol, subgroup))
