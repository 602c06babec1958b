"""Dense matrices over a semiring carrier.

Morphisms S^cols -> S^rows; composition is matrix product, the monoidal
product is the Kronecker product, and the dagger is the entrywise-involuted
transpose.  Matrices are immutable; targeted dimensions are desk scale, so
everything is a flat row-major tuple.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import DimensionMismatchError, SemiringMismatchError
from .semirings import Semiring


@dataclass(frozen=True)
class Matrix:
    semiring: Semiring
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries")

    @staticmethod
    def from_rows(semiring: Semiring, rows: Sequence[Sequence]) -> "Matrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise DimensionMismatchError("ragged rows")
        return Matrix(semiring, r, c, tuple(itertools.chain.from_iterable(rows)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.semiring, self.rows, self.cols) != (other.semiring, other.rows, other.cols):
            return False
        eq = self.semiring.eq
        return all(eq(a, b) for a, b in zip(self.entries, other.entries))

    def __hash__(self):
        return hash((self.semiring, self.rows, self.cols, self.entries))

    def __matmul__(self, other):
        return matmul(self, other)

    def __add__(self, other):
        return madd(self, other)

    def map(self, fn: Callable) -> "Matrix":
        return Matrix(self.semiring, self.rows, self.cols,
                      tuple(fn(e) for e in self.entries))

    def dagger(self) -> "Matrix":
        return dagger(self)

    def kron(self, other) -> "Matrix":
        return kron(self, other)

    def to_json(self):
        fmt = self.semiring.format_element
        return [[fmt(e) for e in self.row(i)] for i in range(self.rows)]


def _same_semiring(a: Matrix, b: Matrix):
    if a.semiring != b.semiring:
        raise SemiringMismatchError(
            f"{a.semiring.kind} vs {b.semiring.kind}")


def matrix_from_json(semiring: Semiring, rows) -> Matrix:
    parse = semiring.parse_element
    return Matrix.from_rows(semiring, [[parse(e) for e in row] for row in rows])


def zeros(semiring: Semiring, rows: int, cols: int) -> Matrix:
    return Matrix(semiring, rows, cols, (semiring.zero,) * (rows * cols))


def identity(semiring: Semiring, d: int) -> Matrix:
    z, o = semiring.zero, semiring.one
    return Matrix(semiring, d, d,
                  tuple(o if i == j else z for i in range(d) for j in range(d)))


def basis_column(semiring: Semiring, d: int, x: int) -> Matrix:
    """|x> as a d x 1 column."""
    z, o = semiring.zero, semiring.one
    return Matrix(semiring, d, 1, tuple(o if i == x else z for i in range(d)))


def column(semiring: Semiring, values: Sequence) -> Matrix:
    return Matrix(semiring, len(values), 1, tuple(values))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    _same_semiring(a, b)
    if a.cols != b.rows:
        raise DimensionMismatchError(f"{a.rows}x{a.cols} @ {b.rows}x{b.cols}")
    S = a.semiring
    add, mul, zero = S.add, S.mul, S.zero
    ae, be = a.entries, b.entries
    n, m, k = a.rows, b.cols, a.cols
    out = []
    for i in range(n):
        arow = ae[i * k:(i + 1) * k]
        for j in range(m):
            acc = zero
            for t in range(k):
                acc = add(acc, mul(arow[t], be[t * m + j]))
            out.append(acc)
    return Matrix(S, n, m, tuple(out))


def madd(a: Matrix, b: Matrix) -> Matrix:
    _same_semiring(a, b)
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise DimensionMismatchError("shape mismatch in addition")
    S = a.semiring
    return Matrix(S, a.rows, a.cols,
                  tuple(S.add(x, y) for x, y in zip(a.entries, b.entries)))


def msub(a: Matrix, b: Matrix) -> Matrix:
    """a - b on carriers with negation."""
    _same_semiring(a, b)
    S = a.semiring
    return madd(a, b.map(S.neg))


def scalar_mul(c, a: Matrix) -> Matrix:
    S = a.semiring
    return a.map(lambda e: S.mul(c, e))


def kron(a: Matrix, b: Matrix) -> Matrix:
    _same_semiring(a, b)
    S = a.semiring
    mul = S.mul
    rows, cols = a.rows * b.rows, a.cols * b.cols
    out = [None] * (rows * cols)
    for i in range(a.rows):
        for j in range(a.cols):
            aij = a[i, j]
            base_r, base_c = i * b.rows, j * b.cols
            for r in range(b.rows):
                off = (base_r + r) * cols + base_c
                brow = b.entries[r * b.cols:(r + 1) * b.cols]
                for c in range(b.cols):
                    out[off + c] = mul(aij, brow[c])
    return Matrix(S, rows, cols, tuple(out))


def kron_all(mats: Sequence[Matrix]) -> Matrix:
    acc = mats[0]
    for m in mats[1:]:
        acc = kron(acc, m)
    return acc


def conjugate(a: Matrix) -> Matrix:
    """Entrywise involution, no transpose."""
    return a.map(a.semiring.involution)


def transpose(a: Matrix) -> Matrix:
    return Matrix(a.semiring, a.cols, a.rows,
                  tuple(a[i, j] for j in range(a.cols) for i in range(a.rows)))


def dagger(a: Matrix) -> Matrix:
    return transpose(conjugate(a))


def swap_matrix(semiring: Semiring, d1: int, d2: int) -> Matrix:
    """|x,y> -> |y,x| as a (d2 d1) x (d1 d2) permutation."""
    z, o = semiring.zero, semiring.one
    rows, cols = d2 * d1, d1 * d2
    out = [z] * (rows * cols)
    for x in range(d1):
        for y in range(d2):
            out[(y * d1 + x) * cols + (x * d2 + y)] = o
    return Matrix(semiring, rows, cols, tuple(out))


def permutation_matrix(semiring: Semiring, perm: Sequence[int]) -> Matrix:
    """Columns |j> -> |perm[j]>."""
    d = len(perm)
    z, o = semiring.zero, semiring.one
    out = [z] * (d * d)
    for j, i in enumerate(perm):
        out[i * d + j] = o
    return Matrix(semiring, d, d, tuple(out))


def is_unitary(u: Matrix) -> bool:
    if u.rows != u.cols:
        return False
    return matmul(dagger(u), u) == identity(u.semiring, u.cols)


def compact_structure(semiring: Semiring, d: int):
    """(cup, cap): the d^2 x 1 pair-state sum_x |xx> and its dagger.

    They satisfy both snake equations
    (cap x id)(id x cup) = id = (id x cap)(cup x id).
    """
    z, o = semiring.zero, semiring.one
    ent = [z] * (d * d)
    for x in range(d):
        ent[x * d + x] = o
    cup = Matrix(semiring, d * d, 1, tuple(ent))
    return cup, dagger(cup)
