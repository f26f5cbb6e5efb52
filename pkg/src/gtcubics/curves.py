"""Generalised twisted cubic ideals: construction and verification.

Two kinds of curves with Hilbert polynomial 3n+1 occur on cubic surfaces:
aCM curves, cut out by the 2x2 minors of a stable 3x2 matrix of linear
forms, and non-CM curves, cut out by three quadrics x0^2, x0 x1, x0 x2 (in
adapted coordinates) together with a singular plane cubic h.  The module
builds both, extracts the P^2-family member of a determinantal
representation attached to a column subspace, and discriminates aCM from
non-CM through the quadric part of the saturated ideal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .groebner import (GREVLEX, Ideal, HilbertPoly, TWISTED_CUBIC_HP,
                       graded_piece_basis, hilbert_polynomial,
                       ideal_quotient_ideal, irrelevant_ideal, saturation)
from .linalg import rank_rational
from .matrices import (LinearMatrix, mat_det, mat_scale_right,
                       parse_linear_matrix)
from .poly import MultiPoly, parse_poly, poly_gcd_list, poly_to_string
from .stability import StabilityVerdict, semistable_3x2, skew_normalize, stability_3x3


class CurveConstructionError(RuntimeError):
    """Violated precondition or failed consistency check while building a curve."""


@dataclass(frozen=True)
class CurveIdeal:
    """A curve ideal with its Hilbert polynomial and aCM flag.

    ``generators`` is the presented generating set; ``ideal`` is its
    saturation with respect to the irrelevant ideal (the paper-style ideals
    are already saturated, arbitrary input may not be).
    """

    generators: tuple[MultiPoly, ...]
    ideal: Ideal
    hilbert: HilbertPoly
    acm: bool

    def to_json_dict(self) -> dict:
        return {
            "generators": [poly_to_string(g) for g in self.generators],
            "hilbert_polynomial": self.hilbert.format(),
            "acm": self.acm,
        }


@dataclass(frozen=True)
class NormalForm:
    """One of the eight aCM normal-form matrices with its stratum data."""

    name: str
    matrix: LinearMatrix
    stratum_dim: int
    description: str


_NORMAL_FORM_DATA = (
    ("A(1)", "x0,x1; x1,x2; x2,x3", 12, "smooth twisted cubic"),
    ("A(2)", "x0,0; x1,x2; x2,x3", 11, "union of a smooth plane conic and a line"),
    ("A(3)", "x0,0; x1,x2; 0,x3", 10, "chain of three lines"),
    ("A(4)", "x0,0; x1,x1; 0,x3", 9, "three concurrent lines spanning P^3"),
    ("A(5)", "x0,0; x1,x0; x2,x3", 9, "double line with a transversal line"),
    ("A(6)", "x0,0; x1,x0; 0,x3", 8, "double line meeting a line in a plane"),
    ("A(7)", "x0,0; x1,x0; x2,x1", 7, "non-planar triple structure on a line"),
    ("A(8)", "x0,0; x1,x0; 0,x1", 4, "first infinitesimal neighbourhood of a line"),
)

#: quadric generators of the non-CM normal form (adapted coordinates)
NON_CM_QUADRICS = ("x0^2", "x0*x1", "x0*x2")
#: cubic of the generic (nodal) non-CM orbit
NON_CM_H_GENERIC = "x1^3 + x2^3 + x1*x2*x3"
#: cubic of the unique closed non-CM orbit (planar triple line)
NON_CM_H_CLOSED = "x1^3"


def normal_forms() -> tuple[NormalForm, ...]:
    """The catalog of the eight aCM isomorphism types (read-only data)."""
    return tuple(NormalForm(name, parse_linear_matrix(text), dim, desc)
                 for name, text, dim, desc in _NORMAL_FORM_DATA)


def signed_minors_3x2(a0: LinearMatrix) -> list[MultiPoly]:
    """The net of signed 2x2 minors (row k deleted, sign (-1)^k)."""
    if a0.shape() != (3, 2):
        raise ValueError("expected a 3x2 matrix")
    out = []
    rows = a0.entries
    for k in range(3):
        i, j = [r for r in range(3) if r != k]
        m = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0]
        out.append(m if k % 2 == 0 else -m)
    return out


def _saturate(gens: Sequence[MultiPoly]) -> Ideal:
    return saturation(Ideal(list(gens), 4), irrelevant_ideal(4))


def _curve_from_generators(gens: Sequence[MultiPoly]) -> CurveIdeal:
    sat = _saturate(gens)
    hp = hilbert_polynomial(sat)
    if not hp.same_polynomial(TWISTED_CUBIC_HP):
        raise CurveConstructionError(
            f"Hilbert polynomial is {hp.format()}, not 3n+1")
    return CurveIdeal(tuple(gens), sat, hp, _is_acm_saturated(sat))


def minors_ideal(a0: LinearMatrix,
                 verdict: StabilityVerdict | None = None) -> CurveIdeal:
    """The aCM curve ideal generated by the minors of a stable 3x2 matrix."""
    if verdict is None:
        verdict = semistable_3x2(a0)
    if not verdict.is_stable():
        raise CurveConstructionError(
            f"matrix is {verdict.level} ({verdict.pattern}); "
            "minors of an unstable matrix need not define a curve")
    curve = _curve_from_generators(signed_minors_3x2(a0))
    if not curve.acm:
        raise CurveConstructionError("minors of a stable matrix must be aCM")
    return curve


def non_cm_ideal(f: MultiPoly, point: Sequence[Fraction],
                 h_plane: MultiPoly) -> CurveIdeal:
    """Non-CM curve: hyperplane section through a singular point, with an
    embedded point there.

    ``h_plane`` is the linear form of the hyperplane; it must vanish at the
    singular point.  Coordinates are adapted so the point becomes
    [0:0:0:1] and the hyperplane becomes y0 = 0; writing f = y0 q + h, the
    ideal is (y0^2, y0 y1, y0 y2, h) pulled back.
    """
    from .surface import validate_cubic

    validate_cubic(f)
    pt = tuple(Fraction(c) for c in point)
    if f.evaluate(pt) != 0 or any(f.partial(i).evaluate(pt) != 0 for i in range(4)):
        raise CurveConstructionError("point is not a singular point of the surface")
    if h_plane.is_zero() or h_plane.total_degree() != 1 or not h_plane.is_homogeneous():
        raise CurveConstructionError("hyperplane must be a nonzero linear form")
    if h_plane.evaluate(pt) != 0:
        raise CurveConstructionError("hyperplane does not pass through the point")

    m = _adapted_coordinates(h_plane, pt)
    from .linalg import invert_rational
    m_inv = invert_rational(m)
    assert m_inv is not None
    f_y = f.subs_linear(m_inv)
    h = f_y.substitute_value(0, 0)
    from .poly import exact_poly_div
    q = exact_poly_div(f_y - h, MultiPoly.variable(4, 0))
    assert f_y == MultiPoly.variable(4, 0) * q + h
    # the plane cubic h must be singular at the image of the point, [0:0:0:1]
    e3 = (Fraction(0),) * 3 + (Fraction(1),)
    if h.evaluate(e3) != 0 or any(h.partial(i).evaluate(e3) != 0 for i in range(4)):
        raise CurveConstructionError(
            "restricted cubic is not singular at the distinguished point")
    y = [MultiPoly.variable(4, i) for i in range(4)]
    gens_y = [y[0] * y[0], y[0] * y[1], y[0] * y[2], h]
    gens = [g.subs_linear(m) for g in gens_y]
    return _curve_from_generators(gens)


def _adapted_coordinates(h_plane: MultiPoly, pt: tuple[Fraction, ...]) -> list[list[Fraction]]:
    """Invertible M with first row = h coefficients, rows 0..2 vanishing at pt."""
    from .stability import _entry_coeffs

    h_coeffs = _entry_coeffs(h_plane, 4)
    from .linalg import kernel_basis
    vanishing = kernel_basis([list(pt)], ncols=4)  # forms with c . pt = 0
    rows = [h_coeffs]
    for v in vanishing:
        if rank_rational(rows + [v]) == len(rows) + 1:
            rows.append(v)
        if len(rows) == 3:
            break
    if len(rows) != 3:
        raise CurveConstructionError("hyperplane form does not vanish at the point")
    j = next(i for i, c in enumerate(pt) if c)
    last = [Fraction(1 if i == j else 0) for i in range(4)]
    rows.append(last)
    if rank_rational(rows) != 4:
        raise CurveConstructionError("failed to build adapted coordinates")
    return rows


def _column_selection(c) -> list[list[Fraction]]:
    rows = [[Fraction(v) for v in row] for row in c]
    if len(rows) == 2 and len(rows[0]) == 3:
        rows = [list(col) for col in zip(*rows)]
    if len(rows) != 3 or any(len(r) != 2 for r in rows):
        raise ValueError("column selection must be a 3x2 (or 2x3) rational matrix")
    if rank_rational(rows) != 2:
        raise CurveConstructionError("column selection must have rank 2")
    return rows


def column_family_curve(a: LinearMatrix, c, surface: MultiPoly | None = None,
                        verdict: StabilityVerdict | None = None) -> CurveIdeal:
    """Curve of the P^2-family of a stable determinantal representation.

    For det(A) != 0 the minors of A0' = A c together with det(A) cut out an
    aCM member.  For det(A) = 0 (the skew case) the family consists of
    hyperplane sections through the distinguished point with an embedded
    point there; the cubic generator comes from ``surface``, which must then
    be supplied and be singular at that point.
    """
    if a.shape() != (3, 3):
        raise ValueError("expected a 3x3 matrix")
    cols = _column_selection(c)
    if verdict is None:
        verdict = stability_3x3(a)
    if not verdict.is_stable():
        raise CurveConstructionError(f"matrix is not stable ({verdict.level})")
    d = mat_det(a.entries)
    a0 = LinearMatrix(mat_scale_right(a.entries, cols), a.nvars)
    if not d.is_zero():
        gens = signed_minors_3x2(a0) + [d]
        return _curve_from_generators(gens)
    if surface is None:
        raise CurveConstructionError(
            "det(A) = 0: the non-CM construction needs the cubic surface "
            "through the distinguished point (pass surface=...)")
    nf = skew_normalize(a, verdict)
    minors = [m for m in signed_minors_3x2(a0) if not m.is_zero()]
    h_plane = poly_gcd_list(minors)
    if h_plane.total_degree() != 1:
        raise CurveConstructionError(
            "column selection does not determine a hyperplane")
    return non_cm_ideal(surface, nf.point, h_plane)


def _is_acm_saturated(sat: Ideal) -> bool:
    quad = graded_piece_basis(sat.groebner(GREVLEX), 2)
    if len(quad) != 3:
        return False
    hp = hilbert_polynomial(Ideal(list(quad), 4))
    return hp.same_polynomial(TWISTED_CUBIC_HP)


def is_acm_curve(curve: CurveIdeal | Ideal) -> bool:
    """aCM test: the saturated ideal's quadric part must be a 3-dimensional
    net that already cuts out the curve (Hilbert polynomial 3n+1).

    Non-CM ideals need their cubic generator; their quadric net drops the
    Hilbert polynomial.
    """
    if isinstance(curve, CurveIdeal):
        sat = curve.ideal
    else:
        sat = saturation(curve, irrelevant_ideal(curve.nvars))
    hp = hilbert_polynomial(sat)
    if not hp.same_polynomial(TWISTED_CUBIC_HP):
        raise CurveConstructionError(
            f"not a generalised twisted cubic: Hilbert polynomial {hp.format()}")
    return _is_acm_saturated(sat)
