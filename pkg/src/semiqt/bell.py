"""Bell-type measurement scenarios, empirical models, and LHV solvers.

A scenario is a normalised shared state on d^N (pure column or CP
preparation) plus, per party, a list of measurement choices, each a d x d
unitary applied before the computational-basis readout.  The empirical
model collects exact outcome weights per measurement context; no-signalling
is an exact marginal comparison; local hidden variables are decided by
exact linear algebra: Gaussian elimination over the classical field when
the positive cone is one, and rational LP feasibility for ordinary
(nonnegative) locality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .channels import (CPMap, apply_to_density, density_of_prep, discard,
                       double, is_normalised, pure_density)
from .errors import DimensionMismatchError, NonNormalisedError, NotEnumerableError
from .linsolve import lp_feasible, solve_linear_field
from .matrices import Matrix, dagger, identity, is_unitary, kron_all, matmul
from .semirings import Semiring


@dataclass(frozen=True)
class BellScenario:
    semiring: Semiring
    party_dims: tuple
    measurements: tuple  # per party: tuple of d x d unitaries
    state: Union[Matrix, CPMap]  # column of dim prod(d) or CP preparation

    @property
    def n_parties(self) -> int:
        return len(self.party_dims)

    @property
    def total_dim(self) -> int:
        out = 1
        for d in self.party_dims:
            out *= d
        return out

    @property
    def choices(self) -> tuple:
        return tuple(len(m) for m in self.measurements)

    def validate(self):
        S = self.semiring
        D = self.total_dim
        if isinstance(self.state, Matrix):
            if (self.state.rows, self.state.cols) != (D, 1):
                raise DimensionMismatchError("state column has wrong dimension")
            total = S.sum(S.norm(e) for e in self.state.entries)
            if not S.eq(total, S.one):
                raise NonNormalisedError("shared state has total weight != 1",
                                         component="state")
        else:
            if self.state.dim_in != 1 or self.state.dim_out != D:
                raise DimensionMismatchError("preparation has wrong dimensions")
            if not is_normalised(self.state):
                raise NonNormalisedError("preparation is not trace preserving",
                                         component="state")
        for i, (d, ms) in enumerate(zip(self.party_dims, self.measurements)):
            for j, u in enumerate(ms):
                if (u.rows, u.cols) != (d, d):
                    raise DimensionMismatchError(f"measurement ({i},{j}) shape")
                if not is_unitary(u):
                    raise NonNormalisedError(
                        f"measurement choice {j} of party {i} is not unitary",
                        component=(i, j))


@dataclass(frozen=True)
class EmpiricalModel:
    """Per-context tables of exact outcome weights."""

    semiring: Semiring
    outcomes: tuple            # outcome arity per party
    choices: tuple             # number of measurement choices per party
    tables: dict               # context tuple -> {outcome tuple: weight}

    @property
    def n_parties(self) -> int:
        return len(self.outcomes)

    def contexts(self):
        return sorted(self.tables)

    def context_total(self, ctx):
        S = self.semiring
        return S.sum(self.tables[ctx].values())

    def to_json(self):
        fmt = self.semiring.format_element
        return {
            "outcomes": list(self.outcomes),
            "choices": list(self.choices),
            "tables": {
                ",".join(map(str, ctx)): {
                    ",".join(map(str, o)): fmt(w)
                    for o, w in sorted(self.tables[ctx].items())}
                for ctx in self.contexts()},
        }


def empirical_model_from_tables(semiring, outcomes, choices, tables) -> EmpiricalModel:
    return EmpiricalModel(semiring, tuple(outcomes), tuple(choices), dict(tables))


def build_empirical_model(scenario: BellScenario) -> EmpiricalModel:
    """Apply each measurement context to the shared state and read Born weights."""
    scenario.validate()
    S = scenario.semiring
    if isinstance(scenario.state, Matrix):
        pure_state, rho = scenario.state, None
    else:
        pure_state, rho = None, density_of_prep(scenario.state)

    outcome_ranges = [range(d) for d in scenario.party_dims]
    tables = {}
    for ctx in itertools.product(*(range(c) for c in scenario.choices)):
        u = kron_all([scenario.measurements[i][ctx[i]]
                      for i in range(scenario.n_parties)])
        if pure_state is not None:
            phi = matmul(u, pure_state)
            weights = [S.norm(e) for e in phi.entries]
        else:
            conj = matmul(u, matmul(rho, dagger(u)))
            weights = [conj[x, x] for x in range(conj.rows)]
        table = {}
        for flat, outs in enumerate(itertools.product(*outcome_ranges)):
            table[outs] = weights[flat]
        tables[ctx] = table
    return EmpiricalModel(S, scenario.party_dims, scenario.choices, tables)


# ---------------------------------------------------------------------------
# No-signalling
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NoSignallingResult:
    holds: bool
    witness: Optional[dict] = None


def check_no_signalling(model: EmpiricalModel) -> NoSignallingResult:
    """Marginals for every proper party subset must not depend on the rest."""
    S = model.semiring
    n = model.n_parties
    contexts = model.contexts()
    for r in range(1, n):
        for subset in itertools.combinations(range(n), r):
            marginals = {}
            for ctx in contexts:
                key = tuple(ctx[i] for i in subset)
                marg = {}
                for outs, w in model.tables[ctx].items():
                    mo = tuple(outs[i] for i in subset)
                    marg[mo] = S.add(marg[mo], w) if mo in marg else w
                if key not in marginals:
                    marginals[key] = (ctx, marg)
                else:
                    ctx0, marg0 = marginals[key]
                    for mo in sorted(marg):
                        if not S.eq(marg[mo], marg0[mo]):
                            return NoSignallingResult(False, {
                                "parties": subset, "context_a": ctx0,
                                "context_b": ctx, "marginal_outcome": mo,
                                "value_a": S.format_element(marg0[mo]),
                                "value_b": S.format_element(marg[mo])})
    return NoSignallingResult(True)


# ---------------------------------------------------------------------------
# Global assignments (the canonical hidden-variable space)
# ---------------------------------------------------------------------------

def global_assignments(model: EmpiricalModel) -> list:
    """Deterministic strategies: one outcome per (party, choice), ordered
    lexicographically by party then choice."""
    per_party = []
    for i in range(model.n_parties):
        per_party.append(list(itertools.product(range(model.outcomes[i]),
                                                repeat=model.choices[i])))
    return list(itertools.product(*per_party))


def _assignment_matches(assignment, ctx, outs) -> bool:
    return all(assignment[i][ctx[i]] == outs[i] for i in range(len(ctx)))


def _linear_system(model: EmpiricalModel):
    """Rows (coefficients over assignments, rhs-lookup index) for all context
    tables plus the total-weight-one row."""
    assigns = global_assignments(model)
    rows = []
    rhs_keys = []
    for ctx in model.contexts():
        for outs in sorted(model.tables[ctx]):
            rows.append([1 if _assignment_matches(a, ctx, outs) else 0
                         for a in assigns])
            rhs_keys.append((ctx, outs))
    rows.append([1] * len(assigns))
    rhs_keys.append(None)  # total weight
    return assigns, rows, rhs_keys


# ---------------------------------------------------------------------------
# Exact LHV over a field
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldLHVSolution:
    assignments: tuple           # deterministic strategies, solver order
    weights: tuple               # field elements, possibly "negative"
    residual_zero: bool


def lhv_solve_field(model: EmpiricalModel) -> Optional[FieldLHVSolution]:
    """Global distribution over deterministic strategies, solved exactly over
    the classical field of the carrier; None when the system is inconsistent."""
    S = model.semiring
    view = S.lhv_field()
    if view is None:
        raise NotEnumerableError(
            f"positive cone of {S.kind} is not a field; use lhv_check_nonneg")
    F, embed = view
    assigns, rows, rhs_keys = _linear_system(model)
    b = []
    for key in rhs_keys:
        if key is None:
            b.append(F.one)
        else:
            ctx, outs = key
            b.append(embed(model.tables[ctx][outs]))
    frows = [[F.one if v else F.zero for v in row] for row in rows]
    x = solve_linear_field(F, frows, b)
    if x is None:
        return None
    residual = True
    for row, bi in zip(frows, b):
        acc = F.zero
        for c, v in zip(row, x):
            if not F.eq(c, F.zero):
                acc = F.add(acc, F.mul(c, v))
        if not F.eq(acc, bi):
            residual = False
            break
    return FieldLHVSolution(tuple(assigns), tuple(x), residual)


# ---------------------------------------------------------------------------
# Nonnegative LHV over the rationals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BellInequality:
    """sum coeffs[ctx][outs] * T[ctx][outs] <= bound for all local models."""

    coefficients: dict
    bound: Fraction
    value: Fraction
    margin: Fraction
    form: str  # "chsh" or "farkas"

    def evaluate(self, tables) -> Fraction:
        return sum(self.coefficients[ctx][outs] * Fraction(tables[ctx][outs])
                   for ctx in self.coefficients for outs in self.coefficients[ctx])


@dataclass(frozen=True)
class NonnegLHVResult:
    feasible: bool
    distribution: Optional[tuple] = None      # aligned with assignments
    assignments: Optional[tuple] = None
    certificate: Optional[BellInequality] = None


DEFAULT_NONNEG_BOUNDS = (2, 2, 2)  # parties, choices, outcomes


def _require_rational(model: EmpiricalModel):
    for ctx in model.contexts():
        for outs, w in model.tables[ctx].items():
            w = Fraction(w)
            if w < 0:
                raise ValueError("model entries must be nonnegative rationals")


def lhv_check_nonneg(model: EmpiricalModel,
                     bounds: tuple = DEFAULT_NONNEG_BOUNDS) -> NonnegLHVResult:
    """Exact decision of ordinary (nonnegative) locality for small models.

    Feasibility is phase-1 simplex over the rationals.  Infeasible
    2-party/2-choice/2-outcome no-signalling models get the most violated
    CHSH inequality as certificate (complete for that size); anything else
    infeasible gets the Farkas functional with its deterministic-strategy
    bound.  Every certificate is revalidated before being returned.
    """
    max_parties, max_choices, max_outcomes = bounds
    if (model.n_parties > max_parties or max(model.choices) > max_choices
            or max(model.outcomes) > max_outcomes):
        raise ValueError(f"model exceeds size bounds {bounds}")
    _require_rational(model)

    assigns, rows, rhs_keys = _linear_system(model)
    b = [Fraction(1) if key is None else Fraction(model.tables[key[0]][key[1]])
         for key in rhs_keys]
    frows = [[Fraction(v) for v in row] for row in rows]
    status, out = lp_feasible(frows, b)
    if status == "feasible":
        return NonnegLHVResult(True, tuple(out), tuple(assigns))

    cert = None
    if model.choices == (2, 2) and model.outcomes == (2, 2):
        cert = _most_violated_chsh(model, assigns)
    if cert is None:
        cert = _farkas_inequality(model, assigns, rhs_keys, out)
    return NonnegLHVResult(False, certificate=cert)


def deterministic_tables(model: EmpiricalModel, assignment) -> dict:
    out = {}
    for ctx in model.contexts():
        out[ctx] = {outs: Fraction(1) if _assignment_matches(assignment, ctx, outs)
                    else Fraction(0)
                    for outs in sorted(model.tables[ctx])}
    return out


def _certify(model, assigns, coefficients, form) -> Optional[BellInequality]:
    def functional(tables):
        return sum(coefficients[ctx][outs] * Fraction(tables[ctx][outs])
                   for ctx in coefficients for outs in coefficients[ctx])

    bound = max(functional(deterministic_tables(model, a)) for a in assigns)
    value = functional(model.tables)
    if value <= bound:
        return None
    return BellInequality(coefficients, bound, value, value - bound, form)


def _most_violated_chsh(model, assigns) -> Optional[BellInequality]:
    """The eight +-E(a,b) correlator inequalities at local bound 2."""
    best = None
    contexts = model.contexts()
    for signs in itertools.product((1, -1), repeat=4):
        if _product(signs) != -1:
            continue  # CHSH needs an odd number of minus signs
        coefficients = {}
        for ctx, sg in zip(contexts, signs):
            coefficients[ctx] = {
                outs: Fraction(sg * (1 if (outs[0] + outs[1]) % 2 == 0 else -1))
                for outs in sorted(model.tables[ctx])}
        cand = _certify(model, assigns, coefficients, "chsh")
        if cand and (best is None or cand.margin > best.margin):
            best = cand
    return best


def _product(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def _farkas_inequality(model, assigns, rhs_keys, farkas_y) -> BellInequality:
    coefficients = {ctx: {outs: Fraction(0) for outs in sorted(model.tables[ctx])}
                    for ctx in model.contexts()}
    for key, y in zip(rhs_keys, farkas_y):
        if key is not None:
            ctx, outs = key
            coefficients[ctx][outs] += Fraction(y)
    cert = _certify(model, assigns, coefficients, "farkas")
    if cert is None:
        raise RuntimeError("Farkas certificate failed revalidation")
    return cert


# ---------------------------------------------------------------------------
# Seeded random scenarios (property-test fuel)
# ---------------------------------------------------------------------------

def _pythagorean_rotation(S, rng) -> Matrix:
    m = rng.randint(2, 5)
    n = rng.randint(1, m - 1)
    c = Fraction(m * m - n * n, m * m + n * n)
    s = Fraction(2 * m * n, m * m + n * n)
    return Matrix.from_rows(S, [[c, -s], [s, c]])


def _two_level(S, d, block: Matrix, i: int, j: int) -> Matrix:
    ent = list(identity(S, d).entries)
    ent[i * d + i] = block[0, 0]
    ent[i * d + j] = block[0, 1]
    ent[j * d + i] = block[1, 0]
    ent[j * d + j] = block[1, 1]
    return Matrix(S, d, d, tuple(ent))


import functools


@functools.lru_cache(maxsize=32)
def _cached_phase_elements(semiring: Semiring):
    from .phases import enumerate_phases

    return enumerate_phases(semiring).elements


def random_unitary(semiring: Semiring, d: int, rng) -> Matrix:
    """Product of permutations, phase diagonals, and embedded 2x2 blocks."""
    from .matrices import permutation_matrix
    from .semirings import (ParitySemiring, QuadraticExtension, RationalField,
                            SplitComplexRationals)

    S = semiring
    perm = list(range(d))
    rng.shuffle(perm)
    u = permutation_matrix(S, perm)

    # diagonal of phases
    if isinstance(S, SplitComplexRationals):
        def small_t():
            den = rng.choice([2, 4, 5])
            return Fraction(rng.randint(1 - den, den - 1), den)  # |t| < 1

        phase_list = [S.hyperbola_point(small_t()) for _ in range(3)] + [S.one]
    elif S.finite_enumerable and (S.size() or 0) <= 4096:
        phase_list = _cached_phase_elements(S)
    else:
        phase_list = S.phase_elements()
    if phase_list and len(phase_list) > 1:
        diag = [rng.choice(phase_list) for _ in range(d)]
        u = matmul(Matrix(S, d, d, tuple(diag[i] if i == j else S.zero
                                         for i in range(d) for j in range(d))), u)

    # embedded blocks where the carrier provides non-monomial unitaries
    if d >= 2:
        block = None
        if isinstance(S, RationalField):
            block = _pythagorean_rotation(S, rng)
        elif isinstance(S, SplitComplexRationals):
            x, y = S.hyperbola_point(Fraction(rng.randint(-2, 2), 3))
            j_unit = (Fraction(0), Fraction(1))
            block = Matrix.from_rows(S, [[(x, Fraction(0)), S.mul(j_unit, (y, Fraction(0)))],
                                         [S.mul(j_unit, (y, Fraction(0))), (x, Fraction(0))]])
        elif isinstance(S, QuadraticExtension):
            x, y = rng.choice(_cached_phase_elements(S))  # x^2 - eps y^2 = 1
            root = (S.base.zero, S.base.one)
            xs, ys = (x, S.base.zero), (y, S.base.zero)
            block = Matrix.from_rows(S, [[xs, S.mul(root, ys)],
                                         [S.mul(root, ys), xs]])
        if block is not None:
            i, j = sorted(rng.sample(range(d), 2))
            u = matmul(_two_level(S, d, block, i, j), u)
    if isinstance(S, ParitySemiring) and d >= 4:
        # I + v v^T for a weight-4 v is symmetric orthogonal in characteristic 2
        idx = rng.sample(range(d), 4)
        ent = list(identity(S, d).entries)
        for i in idx:
            for j in idx:
                ent[i * d + j] ^= 1
        u = matmul(Matrix(S, d, d, tuple(ent)), u)
    return u


def _random_state(semiring: Semiring, D: int, rng) -> Matrix:
    """An exactly normalised random shared state on dimension D."""
    from .matrices import basis_column, column
    from .semirings import ParitySemiring, TropicalSemiring

    S = semiring
    if isinstance(S, ParitySemiring):
        support = rng.sample(range(D), rng.choice([k for k in (1, 3, 5) if k <= D]))
        return column(S, [1 if i in support else 0 for i in range(D)])
    if isinstance(S, TropicalSemiring):
        from .semirings import INF

        entries = [rng.choice([0, 1, 2, 3, INF]) for _ in range(D)]
        entries[rng.randrange(D)] = 0
        return column(S, entries)
    if S.additively_idempotent:  # boolean / chain lattice
        entries = [rng.choice(S.elements()) for _ in range(D)]
        entries[rng.randrange(D)] = S.one
        return column(S, entries)
    state = basis_column(S, D, 0)
    for _ in range(2):
        state = matmul(random_unitary(S, D, rng), state)
    return state


def random_scenario(semiring: Semiring, rng, parties: int = 2, dim: int = 2,
                    choices: int = 2) -> BellScenario:
    """A normalised random scenario: exactly-normalised random shared state,
    random unitary measurement choices per party."""
    S = semiring
    D = dim ** parties
    state = _random_state(S, D, rng)
    measurements = tuple(tuple(random_unitary(S, dim, rng) for _ in range(choices))
                         for _ in range(parties))
    return BellScenario(S, (dim,) * parties, measurements, state)
