"""Exact dense linear algebra over the rationals.

Matrices are lists of rows of ``Fraction`` entries.  Elimination is
fraction-free (Bareiss): rows are first scaled to integers, then the
two-step division-free pivoting rule keeps all intermediate values integral.
The characteristic polynomial uses the Faddeev-LeVerrier recursion.

A small Gaussian elimination over a number field Q[t]/(q) is included for
rank computations at Galois orbits of points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd
from typing import Sequence

from .univar import Coeffs, NumberField

Row = list[Fraction]
Matrix = list[Row]


def mat_copy(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(v) for v in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def _scale_rows_integer(m: Matrix) -> list[Fraction]:
    """Scale each row to integer entries in place; return the factors used."""
    factors = []
    for row in m:
        lcm = 1
        for v in row:
            d = v.denominator
            lcm = lcm // int_gcd(lcm, d) * d
        if lcm != 1:
            for j in range(len(row)):
                row[j] = row[j] * lcm
        factors.append(Fraction(lcm))
    return factors


def _bareiss_echelon(m: Matrix) -> tuple[int, list[int], list[Fraction]]:
    """In-place fraction-free row echelon form.

    Returns (rank, pivot column list, row scaling factors applied first).
    After the call, row i (i < rank) has its pivot in column pivots[i].
    """
    factors = _scale_rows_integer(m)
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    prev = Fraction(1)
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            factors[r], factors[piv] = factors[piv], factors[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev
            m[i][c] = Fraction(0)
        prev = m[r][c]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return r, pivots, factors


def rank_rational(rows: Sequence[Sequence]) -> int:
    m = mat_copy(rows)
    if not m or not m[0]:
        return 0
    r, _, _ = _bareiss_echelon(m)
    return r


def det_rational(rows: Sequence[Sequence]) -> Fraction:
    m = mat_copy(rows)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant requires a square matrix")
    if n == 0:
        return Fraction(1)
    det = Fraction(1)
    sign = 1
    prev = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                m[i][j] = (m[c][c] * m[i][j] - m[i][c] * m[c][j]) / prev
            m[i][c] = Fraction(0)
        prev = m[c][c]
    return sign * m[n - 1][n - 1]


def kernel_basis(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel ``{v : M v = 0}``.

    ``ncols`` must be given for a matrix with zero rows.
    """
    m = mat_copy(rows)
    if not m:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[Fraction(1 if i == j else 0) for i in range(ncols)]
                for j in range(ncols)]
    ncols = len(m[0])
    rank, pivots, _ = _bareiss_echelon(m)
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        # back-substitute pivot variables, bottom row first
        for i in range(rank - 1, -1, -1):
            pc = pivots[i]
            s = sum((m[i][j] * v[j] for j in range(pc + 1, ncols)), Fraction(0))
            v[pc] = -s / m[i][pc]
        basis.append(v)
    return basis


def solve_linear(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """One solution of ``M x = b`` or None when inconsistent."""
    m = mat_copy(rows)
    b = [Fraction(v) for v in rhs]
    if len(m) != len(b):
        raise ValueError("incompatible system shape")
    if not m:
        return []
    ncols = len(m[0])
    aug = [m[i] + [b[i]] for i in range(len(m))]
    rank_a, pivots_a, _ = _bareiss_echelon(aug)
    if any(p == ncols for p in pivots_a):
        return None
    x = [Fraction(0)] * ncols
    for i in range(rank_a - 1, -1, -1):
        pc = pivots_a[i]
        s = sum((aug[i][j] * x[j] for j in range(pc + 1, ncols)), Fraction(0))
        x[pc] = (aug[i][ncols] - s) / aug[i][pc]
    return x


def charpoly(rows: Sequence[Sequence]) -> Coeffs:
    """Characteristic polynomial det(tI - M), ascending coefficients.

    Faddeev-LeVerrier: exact over Q, requires a square matrix.
    """
    m = mat_copy(rows)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("characteristic polynomial requires a square matrix")
    if n == 0:
        return (Fraction(1),)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = identity(n)
    for k in range(1, n + 1):
        if k > 1:
            mk = _mat_mul(m, mk)
        else:
            mk = [row[:] for row in m]
        trace = sum((mk[i][i] for i in range(n)), Fraction(0))
        c = -trace / k
        coeffs[n - k] = c
        for i in range(n):
            mk[i][i] += c
    return tuple(coeffs)


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, mid, m = len(a), len(b), len(b[0])
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for k in range(mid):
            v = ai[k]
            if v:
                bk = b[k]
                for j in range(m):
                    if bk[j]:
                        oi[j] += v * bk[j]
    return out


def mat_mul_rational(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    return _mat_mul(mat_copy(a), mat_copy(b))


def invert_rational(rows: Sequence[Sequence]) -> Matrix | None:
    """Inverse matrix, or None when singular."""
    n = len(rows)
    m = mat_copy(rows)
    if any(len(r) != n for r in m):
        raise ValueError("inverse requires a square matrix")
    aug = [m[i] + identity(n)[i] for i in range(n)]
    # plain Gauss-Jordan; fine at these sizes
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if piv is None:
            return None
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(n):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [vi - f * vr for vi, vr in zip(aug[i], aug[r])]
        r += 1
    return [row[n:] for row in aug]


def rank_over_field(rows: Sequence[Sequence[Coeffs]], field: NumberField) -> int:
    """Rank of a matrix with entries in Q[t]/(q) by Gaussian elimination."""
    m = [list(row) for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = field.inv(m[rank][c])
        m[rank] = [field.mul(inv, v) for v in m[rank]]
        for i in range(rank + 1, len(m)):
            f = m[i][c]
            if f:
                m[i] = [field.sub(v, field.mul(f, w))
                        for v, w in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


@dataclass(frozen=True)
class RatMatrix:
    """Dense rational matrix stored row-major (the exact_arith carrier type)."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = tuple(Fraction(v) for row in rows for v in row)
        return cls(r, c, flat)

    def row_list(self) -> Matrix:
        return [[self.entries[i * self.cols + j] for j in range(self.cols)]
                for i in range(self.rows)]

    def rank(self) -> int:
        return rank_rational(self.row_list())

    def kernel(self) -> list[list[Fraction]]:
        return kernel_basis(self.row_list(), ncols=self.cols)

    def charpoly(self) -> Coeffs:
        if self.rows != self.cols:
            raise ValueError("characteristic polynomial requires a square matrix")
        return charpoly(self.row_list())

    def det(self) -> Fraction:
        return det_rational(self.row_list())
