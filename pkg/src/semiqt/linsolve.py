"""Exact linear solvers: field Gaussian elimination and rational phase-1 simplex.

The field routines work over any carrier with negation and inverses through
its semiring ops; the LP feasibility routine is Fraction-only (Bland's rule,
so termination is guaranteed) and returns either a basic feasible point or a
Farkas certificate y with y.A <= 0 and y.b > 0.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .semirings import Semiring


def rref_field(field: Semiring, rows: list) -> tuple:
    """In-place reduced row echelon form; returns (rows, pivot_columns)."""
    F = field
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if not F.eq(rows[i][c], F.zero):
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = F.try_invert(rows[r][c])
        rows[r] = [F.mul(inv, v) for v in rows[r]]
        for i in range(nrows):
            if i != r and not F.eq(rows[i][c], F.zero):
                factor = rows[i][c]
                rows[i] = [F.add(v, F.neg(F.mul(factor, w)))
                           for v, w in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def solve_linear_field(field: Semiring, a_rows: list, b: list) -> Optional[list]:
    """One solution of A x = b with free variables set to zero, or None."""
    F = field
    n = len(a_rows[0])
    aug = [list(row) + [bi] for row, bi in zip(a_rows, b)]
    aug, pivots = rref_field(F, aug)
    for row in aug:
        if all(F.eq(v, F.zero) for v in row[:n]) and not F.eq(row[n], F.zero):
            return None
    x = [F.zero] * n
    for r, c in enumerate(pivots):
        if c < n:
            x[c] = aug[r][n]
        elif not F.eq(aug[r][n], F.zero):  # pivot in the constant column
            return None
    return x


def field_rank(field: Semiring, rows: list) -> int:
    _, pivots = rref_field(field, [list(r) for r in rows])
    return len(pivots)


# ---------------------------------------------------------------------------
# LP feasibility over the rationals
# ---------------------------------------------------------------------------

def lp_feasible(a_rows: Sequence[Sequence[Fraction]], b: Sequence[Fraction]):
    """Decide {x >= 0 : A x = b}; exact phase-1 simplex with Bland's rule.

    Returns ("feasible", x) or ("infeasible", y) where y is a Farkas
    certificate for the original rows: y.A <= 0 componentwise and y.b > 0.
    """
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    flipped = [Fraction(bi) < 0 for bi in b]
    A = [[-Fraction(v) for v in row] if f else [Fraction(v) for v in row]
         for row, f in zip(a_rows, flipped)]
    b2 = [-Fraction(bi) if f else Fraction(bi) for bi, f in zip(b, flipped)]

    # tableau over x_0..x_{n-1} then artificials a_0..a_{m-1}; minimize sum(a)
    tab = []
    for i in range(m):
        row = A[i] + [Fraction(0)] * m + [b2[i]]
        row[n + i] = Fraction(1)
        tab.append(row)
    basis = [n + i for i in range(m)]
    # reduced-cost row for cost (0..0, 1..1): r_x = -colsum, r_artificial = 0,
    # last entry = -(current objective value)
    obj = [Fraction(0)] * (n + m + 1)
    for j in range(n):
        obj[j] = -sum(tab[i][j] for i in range(m))
    obj[-1] = -sum(b2)

    while True:
        enter = next((j for j in range(n + m) if obj[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise RuntimeError("phase-1 objective unbounded; invariant broken")
        piv = tab[leave][enter]
        tab[leave] = [v / piv for v in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [v - f * w for v, w in zip(tab[i], tab[leave])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [v - f * w for v, w in zip(obj, tab[leave])]
        basis[leave] = enter

    if obj[-1] == 0:  # min sum of artificials is zero
        x = [Fraction(0)] * n
        for i, bv in enumerate(basis):
            if bv < n:
                x[bv] = tab[i][-1]
        return "feasible", x

    # optimal dual y*_i = 1 - reduced_cost(artificial i); y*.A <= 0, y*.b > 0
    y = [Fraction(1) - obj[n + i] for i in range(m)]
    out = [-yi if f else yi for yi, f in zip(y, flipped)]
    return "infeasible", out
