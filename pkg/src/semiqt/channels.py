"""Completely positive maps between doubled systems.

A CP map is kept intensionally as a finite Kraus list; its canonical form is
the (out^2) x (in^2) transfer matrix sum_k kron(K_k, conj(K_k)) acting on
row-major vectorized density matrices ("choi" below).  Two CP maps are equal
exactly when their transfer matrices agree entrywise; the Kraus list order
never matters.  The transfer matrix is computed eagerly at construction.

Density matrices are plain d x d Matrices; doubled states are their d^2 x 1
vectorizations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import DimensionMismatchError, SemiringMismatchError
from .matrices import (Matrix, basis_column, conjugate, dagger, identity,
                       kron, matmul, zeros)
from .semirings import PositiveCone, Semiring, positive_subsemiring


@dataclass(frozen=True)
class CPMap:
    semiring: Semiring
    dim_in: int
    dim_out: int
    kraus: tuple
    choi: Matrix = None

    def __post_init__(self):
        for k in self.kraus:
            if (k.rows, k.cols) != (self.dim_out, self.dim_in):
                raise DimensionMismatchError("Kraus operator has wrong shape")
            if k.semiring != self.semiring:
                raise SemiringMismatchError("Kraus operator over wrong carrier")
        if self.choi is None:
            acc = zeros(self.semiring, self.dim_out ** 2, self.dim_in ** 2)
            for k in self.kraus:
                acc = acc + kron(k, conjugate(k))
            object.__setattr__(self, "choi", acc)

    def __eq__(self, other):
        if not isinstance(other, CPMap):
            return NotImplemented
        return (self.semiring == other.semiring
                and (self.dim_in, self.dim_out) == (other.dim_in, other.dim_out)
                and self.choi == other.choi)

    def __hash__(self):
        return hash((self.semiring, self.dim_in, self.dim_out, self.choi))

    def __add__(self, other):
        return cp_add(self, other)

    def to_json(self):
        return {"in": self.dim_in, "out": self.dim_out,
                "kraus": [k.to_json() for k in self.kraus]}


def cp_map(semiring: Semiring, kraus: Sequence[Matrix]) -> CPMap:
    if not kraus:
        raise ValueError("use zero_cp_map for an empty Kraus list")
    k0 = kraus[0]
    return CPMap(semiring, k0.cols, k0.rows, tuple(kraus))


def zero_cp_map(semiring: Semiring, dim_in: int, dim_out: int) -> CPMap:
    return CPMap(semiring, dim_in, dim_out, ())


def double(f: Matrix) -> CPMap:
    """The conjugation map rho -> f rho f† induced on density matrices."""
    return CPMap(f.semiring, f.cols, f.rows, (f,))


def cp_add(a: CPMap, b: CPMap) -> CPMap:
    if (a.dim_in, a.dim_out) != (b.dim_in, b.dim_out):
        raise DimensionMismatchError("CP maps of different shapes")
    if a.semiring != b.semiring:
        raise SemiringMismatchError("CP maps over different carriers")
    return CPMap(a.semiring, a.dim_in, a.dim_out, a.kraus + b.kraus,
                 a.choi + b.choi)


def cp_scale_int(n: int, f: CPMap) -> CPMap:
    out = zero_cp_map(f.semiring, f.dim_in, f.dim_out)
    for _ in range(n):
        out = cp_add(out, f)
    return out


def cp_equal(a: CPMap, b: CPMap) -> bool:
    if (a.dim_in, a.dim_out) != (b.dim_in, b.dim_out):
        raise DimensionMismatchError("CP maps of different shapes")
    return a == b


def cp_compose(a: CPMap, b: CPMap) -> CPMap:
    """a after b."""
    if b.dim_out != a.dim_in:
        raise DimensionMismatchError("CP maps do not compose")
    kraus = tuple(matmul(ka, kb) for ka in a.kraus for kb in b.kraus)
    return CPMap(a.semiring, b.dim_in, a.dim_out, kraus)


def cp_tensor(a: CPMap, b: CPMap) -> CPMap:
    kraus = tuple(kron(ka, kb) for ka in a.kraus for kb in b.kraus)
    return CPMap(a.semiring, a.dim_in * b.dim_in, a.dim_out * b.dim_out, kraus)


def cp_dagger(f: CPMap) -> CPMap:
    return CPMap(f.semiring, f.dim_out, f.dim_in,
                 tuple(dagger(k) for k in f.kraus))


def identity_cp_map(semiring: Semiring, d: int) -> CPMap:
    return double(identity(semiring, d))


# --- states ---------------------------------------------------------------

def pure_density(psi: Matrix) -> Matrix:
    """|psi><psi| for a column state."""
    return matmul(psi, dagger(psi))


def density_of_prep(prep: CPMap) -> Matrix:
    """The d x d density matrix prepared by a CP map 1 -> d."""
    if prep.dim_in != 1:
        raise DimensionMismatchError("preparation must have trivial input")
    d = prep.dim_out
    return Matrix(prep.semiring, d, d, prep.choi.entries)


def vec(rho: Matrix) -> Matrix:
    return Matrix(rho.semiring, rho.rows * rho.cols, 1, rho.entries)


def unvec(v: Matrix, d: int) -> Matrix:
    return Matrix(v.semiring, d, d, v.entries)


def apply_to_density(f: CPMap, rho: Matrix) -> Matrix:
    """sum_k K rho K†, avoiding the transfer matrix for large dimensions."""
    if rho.rows != f.dim_in or rho.cols != f.dim_in:
        raise DimensionMismatchError("density matrix has wrong dimension")
    out = zeros(f.semiring, f.dim_out, f.dim_out)
    for k in f.kraus:
        out = out + matmul(k, matmul(rho, dagger(k)))
    return out


# --- structure maps --------------------------------------------------------

def decoherence(semiring: Semiring, d: int) -> CPMap:
    """Basis decoherence: Kraus {|x><x|}; kills off-diagonal terms."""
    kraus = []
    for x in range(d):
        e = basis_column(semiring, d, x)
        kraus.append(matmul(e, dagger(e)))
    return CPMap(semiring, d, d, tuple(kraus))


def discard(semiring: Semiring, d: int) -> CPMap:
    """The trace effect: doubled state |rho) -> sum_x rho_xx."""
    kraus = tuple(dagger(basis_column(semiring, d, x)) for x in range(d))
    return CPMap(semiring, d, 1, kraus)


def is_normalised(f: CPMap) -> bool:
    """discard . f = discard, i.e. the map is trace preserving."""
    return cp_compose(discard(f.semiring, f.dim_out), f) == discard(f.semiring, f.dim_in)


# --- the Born rule ----------------------------------------------------------

@dataclass(frozen=True)
class BornWeights:
    weights: tuple
    total: object
    normalized: Optional[tuple]

    def weight_on(self, outcome_set):
        S = self._semiring
        return S.sum(self.weights[i] for i in outcome_set)

    _semiring: Semiring = None


def born_weights(semiring: Semiring, state: Matrix) -> BornWeights:
    """Basis-outcome weights psi_x* psi_x, their total, and exact ratios
    when the total is invertible."""
    S = semiring
    if state.cols != 1:
        raise DimensionMismatchError("state must be a column")
    ws = tuple(S.norm(e) for e in state.entries)
    total = S.sum(ws)
    inv = S.try_invert(total)
    normalized = tuple(S.mul(w, inv) for w in ws) if inv is not None else None
    return BornWeights(ws, total, normalized, S)


# --- classical embedding ----------------------------------------------------

def classical_lift(m: Matrix, cone: Optional[PositiveCone] = None) -> CPMap:
    """The CP map of a positive-cone-valued matrix between decohered objects.

    Entries need recorded sum-of-norms decompositions; entry f[y][x] with
    decomposition sum xi* xi contributes Kraus operators xi |y><x|.
    """
    S = m.semiring
    cone = cone or positive_subsemiring(S)
    kraus = []
    for y in range(m.rows):
        ebra_y = basis_column(S, m.rows, y)
        for x in range(m.cols):
            entry = m[y, x]
            if S.eq(entry, S.zero):
                continue
            wit = cone.witness(entry)
            if wit is None:
                raise ValueError(
                    f"entry ({y},{x}) has no recorded sum-of-norms decomposition")
            ket_x = dagger(basis_column(S, m.cols, x))
            e_yx = matmul(ebra_y, ket_x)
            for xi in wit:
                kraus.append(e_yx.map(lambda v, xi=xi: S.mul(xi, v)))
    return CPMap(S, m.cols, m.rows, tuple(kraus))


def classical_project(f: CPMap) -> Matrix:
    """Recover the cone-valued matrix of a decoherence-invariant CP map."""
    S = f.semiring
    dec_in = decoherence(S, f.dim_in)
    dec_out = decoherence(S, f.dim_out)
    if cp_compose(dec_out, cp_compose(f, dec_in)) != f:
        raise ValueError("CP map is not invariant under decoherence")
    din, dout = f.dim_in, f.dim_out
    entries = []
    for y in range(dout):
        for x in range(din):
            entries.append(f.choi[y * dout + y, x * din + x])
    return Matrix(S, dout, din, tuple(entries))


# --- CP* objects -------------------------------------------------------------

@dataclass(frozen=True)
class CPStarObject:
    """A system together with its self-adjoint idempotent normalised CP map."""

    semiring: Semiring
    dim: int
    idempotent: CPMap

    @staticmethod
    def quantum(semiring: Semiring, d: int) -> "CPStarObject":
        return CPStarObject(semiring, d, identity_cp_map(semiring, d))

    @staticmethod
    def classical(semiring: Semiring, d: int) -> "CPStarObject":
        return CPStarObject(semiring, d, decoherence(semiring, d))

    def validate(self) -> dict:
        e = self.idempotent
        return {
            "idempotent": cp_compose(e, e) == e,
            "self_adjoint": cp_dagger(e) == e,
            "normalised": is_normalised(e),
        }
