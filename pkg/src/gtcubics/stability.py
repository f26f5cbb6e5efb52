"""GIT stability of 3x2 and 3x3 matrices of linear forms.

A matrix of linear forms is destabilised exactly when row and column
operations move it into one of a handful of zero patterns.  Each pattern
membership is an existential statement over the algebraic closure and is
decided exactly:

* zero-pattern rows/columns over the constants: coefficient-matrix ranks;
* "some column combination collapses into a line" conditions: the 2x2
  minors of a symbolic coefficient matrix must share a zero, decided by
  binary-form gcds (3x2 case) or Gröbner consistency on affine charts
  (3x3 case).  Gröbner bases over Q certify solvability over C.

Rational witnesses are attached when a small search finds one; otherwise the
verdict carries the reduced Gröbner basis of the solvable minor system as a
consistency token.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import univar
from .groebner import Ideal, has_solution_over_closure
from .linalg import (det_rational, kernel_basis, rank_rational, solve_linear)
from .matrices import (LinearMatrix, PolyMatrix, mat_adjugate, mat_det,
                       mat_equal, mat_mul, mat_scale_left)
from .poly import MultiPoly, poly_to_string

UNSTABLE = "unstable"
SEMISTABLE_NOT_STABLE = "semistable-not-stable"
STABLE = "stable"

_LEVEL_RANK = {UNSTABLE: 0, SEMISTABLE_NOT_STABLE: 1, STABLE: 2}


@dataclass(frozen=True)
class StabilityVerdict:
    """Outcome of a stability test.

    ``pattern`` names the violated zero pattern (None when stable);
    ``witness`` is rational vector/subspace data reproducing the pattern when
    a cheap search found one; ``consistency`` is a Gröbner-basis token backing
    an over-the-closure existence claim without a rational witness.
    """

    level: str
    pattern: str | None = None
    witness: tuple | None = None
    consistency: tuple[str, ...] | None = None

    def is_stable(self) -> bool:
        return self.level == STABLE

    def is_semistable(self) -> bool:
        return self.level != UNSTABLE

    def at_least(self, other_level: str) -> bool:
        return _LEVEL_RANK[self.level] >= _LEVEL_RANK[other_level]


@dataclass(frozen=True)
class SkewNormalForm:
    """Certificate A = M K(u): rational M, independent linear forms u.

    ``point`` is V(u1, u2, u3), the singular point that the skew normal form
    pins down; it is normalised so its first nonzero coordinate is 1.
    """

    transform: tuple[tuple[Fraction, ...], ...]
    forms: tuple[MultiPoly, ...]
    point: tuple[Fraction, ...]


class SkewNormalizeError(RuntimeError):
    """Preconditions of the skew normalisation are violated."""


def _entry_coeffs(p: MultiPoly, nvars: int) -> list[Fraction]:
    return [p.coeff(tuple(1 if k == v else 0 for k in range(nvars)))
            for v in range(nvars)]


def _require_shape(a: LinearMatrix, rows: int, cols: int) -> None:
    if a.shape() != (rows, cols):
        raise ValueError(f"expected a {rows}x{cols} matrix, got {a.shape()}")


def _row_coeff_matrix(a: LinearMatrix) -> list[list[Fraction]]:
    """rows x (cols * nvars) matrix of all entry coefficients, row by row."""
    return [[c for j in range(a.cols)
             for c in _entry_coeffs(a.entries[i][j], a.nvars)]
            for i in range(a.rows)]


def _col_coeff_matrix(a: LinearMatrix) -> list[list[Fraction]]:
    """(rows * nvars) x cols coefficient matrix of the columns."""
    out = []
    for i in range(a.rows):
        vecs = [_entry_coeffs(a.entries[i][j], a.nvars) for j in range(a.cols)]
        for v in range(a.nvars):
            out.append([vecs[j][v] for j in range(a.cols)])
    return out


def _symbolic_column_collapse(a: LinearMatrix, vpolys: Sequence[MultiPoly]) -> PolyMatrix:
    """Coefficient matrix of A*v for a symbolic column vector v.

    Rows are indexed by the target C^rows, columns by the nvars coefficients;
    entries are polynomials in the parameter ring of ``vpolys``.
    """
    npar = vpolys[0].nvars
    out = []
    for i in range(a.rows):
        row = []
        for v in range(a.nvars):
            acc = MultiPoly.zero(npar)
            for j in range(a.cols):
                c = _entry_coeffs(a.entries[i][j], a.nvars)[v]
                if c:
                    acc = acc + vpolys[j].scale(c)
            row.append(acc)
        out.append(row)
    return out


def _symbolic_row_collapse(a: LinearMatrix, fpolys: Sequence[MultiPoly]) -> PolyMatrix:
    """Coefficient matrix of phi*A for a symbolic row functional phi."""
    npar = fpolys[0].nvars
    out = []
    for j in range(a.cols):
        row = []
        for v in range(a.nvars):
            acc = MultiPoly.zero(npar)
            for i in range(a.rows):
                c = _entry_coeffs(a.entries[i][j], a.nvars)[v]
                if c:
                    acc = acc + fpolys[i].scale(c)
            row.append(acc)
        out.append(row)
    return out


def _all_2x2_minors(mat: PolyMatrix) -> list[MultiPoly]:
    rows = len(mat)
    cols = len(mat[0])
    out = []
    for i, k in itertools.combinations(range(rows), 2):
        for j, l in itertools.combinations(range(cols), 2):
            out.append(mat[i][j] * mat[k][l] - mat[i][l] * mat[k][j])
    return out


def _rational_rank_leq1(a: LinearMatrix, v: Sequence[Fraction]) -> bool:
    """Whether the coefficient matrix of A*v has rank <= 1 (v rational)."""
    rows = []
    for i in range(a.rows):
        acc = [Fraction(0)] * a.nvars
        for j in range(a.cols):
            cs = _entry_coeffs(a.entries[i][j], a.nvars)
            for k in range(a.nvars):
                acc[k] += Fraction(v[j]) * cs[k]
        rows.append(acc)
    return rank_rational(rows) <= 1


def _rational_rank_leq1_row(a: LinearMatrix, phi: Sequence[Fraction]) -> bool:
    rows = []
    for j in range(a.cols):
        acc = [Fraction(0)] * a.nvars
        for i in range(a.rows):
            cs = _entry_coeffs(a.entries[i][j], a.nvars)
            for k in range(a.nvars):
                acc[k] += Fraction(phi[i]) * cs[k]
        rows.append(acc)
    return rank_rational(rows) <= 1


def _small_vectors(dim: int):
    """Nonzero integer vectors with entries in {-2..2}, first nonzero positive."""
    for v in itertools.product(range(-2, 3), repeat=dim):
        first = next((x for x in v if x), None)
        if first is None or first < 0:
            continue
        yield tuple(Fraction(x) for x in v)


# ---------------------------------------------------------------------------
# 3x2 stability
# ---------------------------------------------------------------------------


def _binary_forms_common_root(forms: list[MultiPoly]) -> tuple[bool, tuple[Fraction, Fraction] | None]:
    """Common projective zero of binary forms in a 2-variable ring.

    Returns (exists over C, rational witness or None).  Decided through the
    gcd of the dehomogenisations plus the point at infinity; gcds over Q
    detect common roots over the closure.
    """
    forms = [f for f in forms if not f.is_zero()]
    if not forms:
        return True, (Fraction(1), Fraction(0))
    # point at infinity (1 : 0): every form must lack its pure s-power term
    if all(f.coeff((f.total_degree(), 0)) == 0 for f in forms):
        return True, (Fraction(1), Fraction(0))
    gcd_acc: univar.Coeffs | None = None
    for f in forms:
        deh = f.substitute_value(1, 1).drop_var(1)
        coeffs, _ = univar.uni_from_multipoly(deh)
        gcd_acc = coeffs if gcd_acc is None else univar.gcd(gcd_acc, coeffs)
        if univar.deg(gcd_acc) == 0:
            return False, None
    assert gcd_acc is not None and univar.deg(gcd_acc) > 0
    for fac, _ in univar.factor_rational(gcd_acc):
        if univar.deg(fac) == 1:
            return True, (-fac[0], Fraction(1))
    return True, None


def semistable_3x2(a0: LinearMatrix) -> StabilityVerdict:
    """Stability of a 3x2 matrix of linear forms (semistable = stable here).

    Destabilising patterns: linearly dependent rows, or a column combination
    whose coefficient matrix drops to rank <= 1.
    """
    _require_shape(a0, 3, 2)
    rows = _row_coeff_matrix(a0)
    if rank_rational(rows) < 3:
        ker = kernel_basis([list(col) for col in zip(*rows)], ncols=3)
        witness = tuple(ker[0]) if ker else None
        return StabilityVerdict(UNSTABLE, "rows-degenerate", witness)
    s = MultiPoly.variable(2, 0)
    t = MultiPoly.variable(2, 1)
    minors = _all_2x2_minors(_symbolic_column_collapse(a0, [s, t]))
    exists, witness = _binary_forms_common_root(minors)
    if exists:
        return StabilityVerdict(UNSTABLE, "column-into-line", witness)
    return StabilityVerdict(STABLE)


# ---------------------------------------------------------------------------
# 3x3 stability
# ---------------------------------------------------------------------------


def _pattern_two_columns_into_line(a: LinearMatrix) -> tuple[bool, tuple | None, tuple[str, ...] | None]:
    """Existence of a 2-dim column space killed by a 2-dim space of rows.

    Equivalent to: for some functional psi, the 3x8 coefficient matrix of
    A restricted to ker(psi) has rank <= 1.  Decided on the three affine
    charts of psi in P^2; consistency over Q implies a solution over C.
    """
    for psi in _small_vectors(3):
        ker = kernel_basis([list(psi)], ncols=3)
        stacked = []
        for i in range(a.rows):
            row: list[Fraction] = []
            for kv in ker:
                acc = [Fraction(0)] * a.nvars
                for j in range(a.cols):
                    cs = _entry_coeffs(a.entries[i][j], a.nvars)
                    for k in range(a.nvars):
                        acc[k] += kv[j] * cs[k]
                row.extend(acc)
            stacked.append(row)
        if rank_rational(stacked) <= 1:
            return True, ("psi", psi), None
    for chart in range(3):
        # psi has a 1 in position `chart`; kernel basis is explicit
        params = [MultiPoly.variable(2, k) for k in range(2)]
        psi_polys: list[MultiPoly] = []
        pi = 0
        for pos in range(3):
            if pos == chart:
                psi_polys.append(MultiPoly.const(2, 1))
            else:
                psi_polys.append(params[pi])
                pi += 1
        others = [pos for pos in range(3) if pos != chart]
        v1 = [MultiPoly.zero(2)] * 3
        v1[others[0]] = MultiPoly.const(2, 1)
        v1[chart] = -psi_polys[others[0]]
        v2 = [MultiPoly.zero(2)] * 3
        v2[others[1]] = MultiPoly.const(2, 1)
        v2[chart] = -psi_polys[others[1]]
        b = []
        for i in range(a.rows):
            row = []
            for v in (v1, v2):
                m = _symbolic_column_collapse(a, v)
                row.extend(m[i])
            b.append(row)
        minors = _all_2x2_minors(b)
        ideal = Ideal(minors, 2)
        if has_solution_over_closure(ideal):
            token = tuple(poly_to_string(g) for g in ideal.groebner())
            return True, None, (f"chart={chart}",) + token
    return False, None, None


def _pattern_collapse(a: LinearMatrix, side: str) -> tuple[bool, tuple | None, tuple[str, ...] | None]:
    """Rank <= 1 collapse of A*v (side='column') or phi*A (side='row').

    The 2x2 minors are quadrics in the 3 symbolic coordinates; the pattern
    holds iff they share a projective zero, checked chart by chart (affine
    consistency over the closure).
    """
    check = _rational_rank_leq1 if side == "column" else _rational_rank_leq1_row
    for v in _small_vectors(3):
        if check(a, v):
            return True, (side, v), None
    params = [MultiPoly.variable(3, k) for k in range(3)]
    build = (_symbolic_column_collapse if side == "column"
             else _symbolic_row_collapse)
    minors = _all_2x2_minors(build(a, params))
    for chart in range(3):
        chart_minors = []
        for m in minors:
            deh = m.substitute_value(chart, 1)
            chart_minors.append(deh)
        ideal = Ideal([p for p in chart_minors if not p.is_zero()], 3)
        if all(p.is_zero() for p in chart_minors) or has_solution_over_closure(ideal):
            token = tuple(poly_to_string(g) for g in ideal.groebner())
            return True, None, (f"{side}-chart={chart}",) + token
    return False, None, None


def stability_3x3(a: LinearMatrix) -> StabilityVerdict:
    """Full stability classification of a 3x3 matrix of linear forms.

    Unstable patterns: a vanishing column combination, dependent rows, or a
    2-dim column space crushed into a single row line.  A semistable matrix
    fails stability exactly when one column direction or one row functional
    collapses to coefficient rank <= 1.
    """
    _require_shape(a, 3, 3)
    col_kernel = kernel_basis(_col_coeff_matrix(a), ncols=3)
    if col_kernel:
        return StabilityVerdict(UNSTABLE, "zero-column", tuple(col_kernel[0]))
    rows = _row_coeff_matrix(a)
    if rank_rational(rows) < 3:
        ker = kernel_basis([list(col) for col in zip(*rows)], ncols=3)
        return StabilityVerdict(UNSTABLE, "rows-dependent",
                                tuple(ker[0]) if ker else None)
    hit, witness, token = _pattern_two_columns_into_line(a)
    if hit:
        return StabilityVerdict(UNSTABLE, "two-columns-into-line", witness, token)
    hit, witness, token = _pattern_collapse(a, "column")
    if hit:
        return StabilityVerdict(SEMISTABLE_NOT_STABLE, "column-into-line",
                                witness, token)
    hit, witness, token = _pattern_collapse(a, "row")
    if hit:
        return StabilityVerdict(SEMISTABLE_NOT_STABLE, "two-columns-into-plane",
                                witness, token)
    return StabilityVerdict(STABLE)


def det_criterion(a: LinearMatrix) -> str:
    """Determinant shortcut: nonzero det gives semistability, irreducible
    det gives stability; silent (inconclusive) on det = 0."""
    _require_shape(a, 3, 3)
    d = mat_det(a.entries)
    if d.is_zero():
        return "inconclusive"
    from .surface import has_linear_factor  # deferred: surface imports us
    if has_linear_factor(d):
        return "semistable-at-least"
    return "stable-at-least"


# ---------------------------------------------------------------------------
# rank-1 factorization and skew normalisation
# ---------------------------------------------------------------------------


def rank1_factorize(b: Sequence[Sequence[MultiPoly]]) -> tuple[list[MultiPoly], list[MultiPoly]]:
    """Factor a rank <= 1 polynomial matrix as B = v * u^T.

    Requires all 2x2 minors to vanish identically and B != 0.  Follows the
    greatest-common-divisor column extraction; the primitive columns are then
    proportional over Q.  Returns (column factor v, row factor u), normalised
    so the first nonzero coefficient of v is 1.
    """
    from .poly import exact_poly_div, poly_gcd_list

    rows = len(b)
    cols = len(b[0])
    nvars = b[0][0].nvars
    if all(b[i][j].is_zero() for i in range(rows) for j in range(cols)):
        raise ValueError("rank-1 factorization of the zero matrix is ambiguous")
    for m in _all_2x2_minors([list(r) for r in b]):
        if not m.is_zero():
            raise ValueError("a 2x2 minor does not vanish; rank exceeds 1")
    col_gcds: list[MultiPoly | None] = []
    prim_cols: list[list[MultiPoly] | None] = []
    for j in range(cols):
        col = [b[i][j] for i in range(rows)]
        if all(p.is_zero() for p in col):
            col_gcds.append(None)
            prim_cols.append(None)
            continue
        g = poly_gcd_list(col)
        col_gcds.append(g)
        prim_cols.append([exact_poly_div(p, g) if not p.is_zero() else p
                          for p in col])
    ref = next(j for j in range(cols) if prim_cols[j] is not None)
    v = prim_cols[ref]
    assert v is not None
    u: list[MultiPoly] = []
    for j in range(cols):
        if prim_cols[j] is None:
            u.append(MultiPoly.zero(nvars))
            continue
        cj = prim_cols[j]
        # proportional over Q: compare leading coefficients entrywise
        i0 = next(i for i in range(rows) if not v[i].is_zero())
        lam = cj[i0].leading_coeff() / v[i0].leading_coeff() \
            if not cj[i0].is_zero() else None
        if lam is None or any(cj[i] != v[i].scale(lam) for i in range(rows)):
            raise ValueError("primitive columns are not proportional; "
                             "rank-1 precondition violated")
        g = col_gcds[j]
        assert g is not None
        u.append(g.scale(lam))
    # normalise: first nonzero coefficient of the first nonzero entry of v is 1
    lead = next(p for p in v if not p.is_zero())
    scale = lead.leading_coeff()
    v = [p.scale(1 / scale) for p in v]
    u = [p.scale(scale) for p in u]
    out = [[v[i] * u[j] for j in range(cols)] for i in range(rows)]
    assert mat_equal(out, [list(r) for r in b]), "factorization does not reproduce B"
    return v, u


def koszul_matrix(u: Sequence[MultiPoly]) -> PolyMatrix:
    """The skew syzygy matrix K(u) with K(u) u = 0 for three forms u."""
    if len(u) != 3:
        raise ValueError("Koszul matrix needs exactly three forms")
    z = MultiPoly.zero(u[0].nvars)
    return [[z, u[2], -u[1]],
            [-u[2], z, u[0]],
            [u[1], -u[0], z]]


def skew_normalize(a: LinearMatrix,
                   verdict: StabilityVerdict | None = None) -> SkewNormalForm:
    """Normalise a stable determinant-zero matrix as A = M K(u).

    The adjugate has rank <= 1 and factors as u v^T with independent linear
    forms u spanning the ideal of the distinguished singular point V(u).
    """
    _require_shape(a, 3, 3)
    d = mat_det(a.entries)
    if not d.is_zero():
        raise SkewNormalizeError("determinant is nonzero")
    if verdict is None:
        verdict = stability_3x3(a)
    if not verdict.is_stable():
        raise SkewNormalizeError(f"matrix is not stable ({verdict.level})")
    c = mat_adjugate(a.entries)
    if any(c[i][j].is_zero() for i in range(3) for j in range(3)):
        raise SkewNormalizeError(
            "adjugate has a zero entry, contradicting stability")
    u, _v = rank1_factorize(c)
    for p in u:
        if p.is_zero() or p.total_degree() != 1 or not p.is_homogeneous():
            raise SkewNormalizeError("column factor entries are not linear forms")
    coeff_rows = [_entry_coeffs(p, a.nvars) for p in u]
    if rank_rational(coeff_rows) != 3:
        raise SkewNormalizeError("column factor forms are not independent")
    k = koszul_matrix(u)
    # A u = 0 must hold since A adj(A) = det(A) I = 0
    au = mat_mul(a.entries, [[p] for p in u])
    assert all(e[0].is_zero() for e in au), "A u != 0 for the extracted u"
    m_rows: list[list[Fraction]] = []
    system = []
    rhs_template = []
    for j in range(3):
        for v in range(a.nvars):
            system.append([_entry_coeffs(k[kk][j], a.nvars)[v] for kk in range(3)])
            rhs_template.append((j, v))
    for i in range(3):
        rhs = [_entry_coeffs(a.entries[i][j], a.nvars)[v] for j, v in rhs_template]
        sol = solve_linear(system, rhs)
        if sol is None:
            raise SkewNormalizeError("A does not lie in the row space of K(u)")
        m_rows.append(sol)
    if det_rational(m_rows) == 0:
        raise SkewNormalizeError("transform matrix is singular")
    assert mat_equal(mat_scale_left(m_rows, k), a.entries), "A != M K(u)"
    point_kernel = kernel_basis(coeff_rows, ncols=a.nvars)
    assert len(point_kernel) == 1
    pt = point_kernel[0]
    lead = next(x for x in pt if x)
    point = tuple(x / lead for x in pt)
    return SkewNormalForm(tuple(tuple(r) for r in m_rows), tuple(u), point)
