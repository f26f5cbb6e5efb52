"""Matrices of polynomials: determinants, adjugates, matrices of linear forms.

The text format for matrices of linear forms is rows separated by ``;`` and
entries separated by ``,`` with each entry in the polynomial grammar, e.g.
``0,-z3,z0; z1,0,-z3; -z3,z2,0``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .poly import MultiPoly, PolyParseError, parse_poly, poly_to_string

PolyMatrix = list[list[MultiPoly]]


def mat_det(m: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Exact determinant by cofactor expansion (matrices here are tiny)."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant requires a square matrix")
    nvars = m[0][0].nvars if n else 0
    if n == 0:
        return MultiPoly.const(nvars, 1)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    det = MultiPoly.zero(nvars)
    rest = [row[1:] for row in m]
    for i in range(n):
        if m[i][0].is_zero():
            continue
        minor = [rest[k] for k in range(n) if k != i]
        term = m[i][0] * mat_det(minor)
        det = det + term if i % 2 == 0 else det - term
    return det


def mat_adjugate(m: Sequence[Sequence[MultiPoly]]) -> PolyMatrix:
    """Adjugate (transposed cofactor matrix); satisfies M adj(M) = det(M) I."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("adjugate requires a square matrix")
    adj: PolyMatrix = [[None] * n for _ in range(n)]  # type: ignore[list-item]
    for i in range(n):
        for j in range(n):
            minor = [[m[r][c] for c in range(n) if c != i]
                     for r in range(n) if r != j]
            cof = mat_det(minor)
            adj[i][j] = cof if (i + j) % 2 == 0 else -cof
    return adj


def mat_mul(a: Sequence[Sequence[MultiPoly]], b: Sequence[Sequence[MultiPoly]]) -> PolyMatrix:
    rows, mid, cols = len(a), len(b), len(b[0])
    nvars = a[0][0].nvars
    out = [[MultiPoly.zero(nvars) for _ in range(cols)] for _ in range(rows)]
    for i in range(rows):
        for k in range(mid):
            if a[i][k].is_zero():
                continue
            for j in range(cols):
                if not b[k][j].is_zero():
                    out[i][j] = out[i][j] + a[i][k] * b[k][j]
    return out


def mat_scale_left(g: Sequence[Sequence], m: Sequence[Sequence[MultiPoly]]) -> PolyMatrix:
    """Product g*M of a rational matrix with a polynomial matrix."""
    rows, mid = len(g), len(m)
    cols = len(m[0])
    nvars = m[0][0].nvars
    out = [[MultiPoly.zero(nvars) for _ in range(cols)] for _ in range(rows)]
    for i in range(rows):
        for k in range(mid):
            c = Fraction(g[i][k])
            if c:
                for j in range(cols):
                    out[i][j] = out[i][j] + m[k][j].scale(c)
    return out


def mat_scale_right(m: Sequence[Sequence[MultiPoly]], h: Sequence[Sequence]) -> PolyMatrix:
    """Product M*h of a polynomial matrix with a rational matrix."""
    rows = len(m)
    mid = len(h)
    cols = len(h[0])
    nvars = m[0][0].nvars
    out = [[MultiPoly.zero(nvars) for _ in range(cols)] for _ in range(rows)]
    for i in range(rows):
        for k in range(mid):
            if m[i][k].is_zero():
                continue
            for j in range(cols):
                c = Fraction(h[k][j])
                if c:
                    out[i][j] = out[i][j] + m[i][k].scale(c)
    return out


def mat_equal(a: Sequence[Sequence[MultiPoly]], b: Sequence[Sequence[MultiPoly]]) -> bool:
    return len(a) == len(b) and all(
        len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb))
        for ra, rb in zip(a, b))


class LinearMatrix:
    """An m x n matrix whose entries are linear forms in ``nvars`` variables.

    Every nonzero entry must be homogeneous of degree exactly 1; zero entries
    are allowed.  This is the carrier for 3x2 and 3x3 Kronecker modules.
    """

    __slots__ = ("rows", "cols", "nvars", "entries")

    def __init__(self, entries: Sequence[Sequence[MultiPoly]], nvars: int = 4):
        self.rows = len(entries)
        if self.rows == 0:
            raise ValueError("empty matrix")
        self.cols = len(entries[0])
        self.nvars = nvars
        rows: PolyMatrix = []
        for row in entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
            for p in row:
                if p.nvars != nvars:
                    raise ValueError("entry in a different polynomial ring")
                if not p.is_zero() and (not p.is_homogeneous() or p.total_degree() != 1):
                    raise ValueError(f"entry {p} is not a linear form")
            rows.append(list(row))
        self.entries = rows

    def __getitem__(self, ij: tuple[int, int]) -> MultiPoly:
        return self.entries[ij[0]][ij[1]]

    def column(self, j: int) -> list[MultiPoly]:
        return [self.entries[i][j] for i in range(self.rows)]

    def row(self, i: int) -> list[MultiPoly]:
        return list(self.entries[i])

    def coeff_vector_of_entry(self, i: int, j: int) -> list[Fraction]:
        """The nvars coefficients of the linear-form entry (i, j)."""
        p = self.entries[i][j]
        return [p.coeff(tuple(1 if k == v else 0 for k in range(self.nvars)))
                for v in range(self.nvars)]

    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearMatrix):
            return NotImplemented
        return self.shape() == other.shape() and mat_equal(self.entries, other.entries)

    def __repr__(self) -> str:
        return f"LinearMatrix({matrix_to_string(self.entries)!r})"


def parse_linear_matrix(text: str, nvars: int = 4) -> LinearMatrix:
    """Parse the ``;``/``,`` matrix text format into a LinearMatrix."""
    rows = []
    for chunk in text.split(";"):
        row = [parse_poly(part.strip(), nvars) for part in chunk.split(",")]
        rows.append(row)
    if len({len(r) for r in rows}) != 1:
        raise PolyParseError("rows have different lengths")
    return LinearMatrix(rows, nvars)


def parse_rational_matrix(text: str) -> list[list[Fraction]]:
    """Parse a matrix of rational numbers in the same ``;``/``,`` format."""
    rows = []
    for chunk in text.split(";"):
        row = []
        for part in chunk.split(","):
            part = part.strip()
            try:
                row.append(Fraction(part))
            except (ValueError, ZeroDivisionError) as exc:
                raise PolyParseError(f"bad rational entry {part!r}") from exc
        rows.append(row)
    if len({len(r) for r in rows}) != 1:
        raise PolyParseError("rows have different lengths")
    return rows


def matrix_to_string(m: Sequence[Sequence[MultiPoly]], letter: str = "x") -> str:
    return "; ".join(",".join(poly_to_string(p, letter) for p in row) for row in m)
