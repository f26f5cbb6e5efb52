"""Solving zero-dimensional polynomial systems by eigenvalue methods.

Given an affine ideal with finitely many solutions, the quotient algebra is
finite dimensional over Q.  A separating linear form ``l`` is chosen from the
deterministic family ``l_k = v0 + k*v1 + k^2*v2 + ...``; the characteristic
polynomial of its multiplication matrix splits the solutions by their
``l``-values.  Rational eigenvalues give rational points; non-rational
irreducible factors are reported as unsplit Galois orbits carrying their
coordinates as residues in Q[t]/(factor).

Multiplicities are read off as root multiplicities of the characteristic
polynomial, which equal the local quotient-algebra dimensions; for Jacobian
ideals of hypersurfaces these are the Tjurina numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import univar
from .groebner import GREVLEX, Ideal, reduce_full
from .linalg import charpoly, invert_rational, mat_mul_rational
from .poly import Exp, MultiPoly, exp_divides
from .univar import Coeffs, NumberField


class NotZeroDimensionalError(ValueError):
    """The ideal does not have a finite solution set."""


class SeparatingFormError(RuntimeError):
    """No separating linear form found within the candidate bound."""


SEPARATING_CANDIDATES = 51  # k = 0..50


@dataclass(frozen=True)
class RationalSolution:
    """A rational solution with its local multiplicity."""

    point: tuple[Fraction, ...]
    multiplicity: int


@dataclass(frozen=True)
class OrbitSolution:
    """An unsplit Galois orbit of conjugate solutions.

    ``min_poly`` is the monic irreducible minimal polynomial of the
    separating-form value; coordinates are residues in Q[t]/(min_poly).
    Every point of the orbit shares ``point_multiplicity``.
    """

    min_poly: Coeffs
    degree: int
    point_multiplicity: int
    coords: tuple[Coeffs, ...]

    @property
    def total_multiplicity(self) -> int:
        return self.degree * self.point_multiplicity

    def field(self) -> NumberField:
        return NumberField(self.min_poly)


@dataclass(frozen=True)
class ZeroDimSolution:
    """Full solution data of a zero-dimensional affine system."""

    entries: tuple[RationalSolution | OrbitSolution, ...]
    quotient_dimension: int
    point_count: int
    separating_k: int

    def total_multiplicity(self) -> int:
        return sum(e.multiplicity if isinstance(e, RationalSolution)
                   else e.total_multiplicity for e in self.entries)


def standard_monomials(ideal: Ideal) -> list[Exp]:
    """Monomials outside the leading-term ideal; raises when infinite."""
    gb = ideal.groebner(GREVLEX)
    n = ideal.nvars
    lts = [max(g.terms, key=GREVLEX.key) for g in gb]
    bounds = []
    for i in range(n):
        pure = [e[i] for e in lts if sum(e) == e[i]]
        if not pure:
            raise NotZeroDimensionalError(
                f"no pure power of variable {i} among leading terms")
        bounds.append(min(pure))
    mons: list[Exp] = []

    def walk(prefix: tuple[int, ...]) -> None:
        if len(prefix) == n:
            if not any(exp_divides(lt, prefix) for lt in lts):
                mons.append(prefix)
            return
        for k in range(bounds[len(prefix)]):
            walk(prefix + (k,))

    walk(())
    mons.sort(key=GREVLEX.key)
    return mons


def _nf_vector(p: MultiPoly, ideal: Ideal, mons: Sequence[Exp],
               index: dict[Exp, int]) -> list[Fraction]:
    nf = reduce_full(p, ideal.groebner(GREVLEX), GREVLEX)
    vec = [Fraction(0)] * len(mons)
    for e, c in nf.terms.items():
        vec[index[e]] = c
    return vec


def multiplication_matrix(p: MultiPoly, ideal: Ideal,
                          mons: Sequence[Exp]) -> list[list[Fraction]]:
    """Matrix of multiplication by ``p`` on the quotient algebra basis."""
    index = {e: i for i, e in enumerate(mons)}
    cols = []
    for e in mons:
        b = MultiPoly.monomial(ideal.nvars, e)
        cols.append(_nf_vector(p * b, ideal, mons, index))
    # columns were computed; transpose to row-major
    d = len(mons)
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def quotient_dimension(ideal: Ideal) -> int:
    return len(standard_monomials(ideal))


def _variable_matrices(ideal: Ideal, mons: Sequence[Exp]) -> list[list[list[Fraction]]]:
    return [multiplication_matrix(MultiPoly.variable(ideal.nvars, i), ideal, mons)
            for i in range(ideal.nvars)]


def _combine(matrices: Sequence[Sequence[Sequence[Fraction]]],
             weights: Sequence[Fraction]) -> list[list[Fraction]]:
    d = len(matrices[0])
    out = [[Fraction(0)] * d for _ in range(d)]
    for m, w in zip(matrices, weights):
        if w:
            for i in range(d):
                row = m[i]
                oi = out[i]
                for j in range(d):
                    if row[j]:
                        oi[j] += w * row[j]
    return out


def radical_point_count(ideal: Ideal,
                        var_mats: Sequence[Sequence[Sequence[Fraction]]]) -> tuple[Ideal, int]:
    """Radical of a zero-dimensional ideal and the number of distinct points.

    Adjoining the squarefree part of each coordinate's minimal polynomial
    yields the radical (Seidenberg); the dimension of its quotient counts the
    solutions over the algebraic closure.
    """
    extra = []
    for i, m in enumerate(var_mats):
        chi = charpoly(m)
        sq = univar.squarefree_part(chi)
        extra.append(univar.uni_to_multipoly(sq, ideal.nvars, i))
    rad = Ideal(list(ideal.gens) + extra, ideal.nvars)
    return rad, quotient_dimension(rad)


def _eval_at_orbit(p: MultiPoly, coords: Sequence[Coeffs], field: NumberField) -> Coeffs:
    total = field.zero()
    for e, c in p.terms.items():
        v = field.from_rational(c)
        for i, k in enumerate(e):
            for _ in range(k):
                v = field.mul(v, coords[i])
        total = field.add(total, v)
    return total


def zero_dim_solve(ideal: Ideal) -> ZeroDimSolution:
    """Solve a zero-dimensional affine system exactly.

    Raises ``NotZeroDimensionalError`` for positive-dimensional input and
    ``SeparatingFormError`` when all 51 candidate forms fail (which a finite
    point set cannot force; it would signal a bug).
    """
    n = ideal.nvars
    gb = ideal.groebner(GREVLEX)
    if len(gb) == 1 and gb[0].is_constant():
        return ZeroDimSolution((), 0, 0, 0)
    mons = standard_monomials(ideal)
    dim = len(mons)
    var_mats = _variable_matrices(ideal, mons)

    rad, npoints = radical_point_count(ideal, var_mats)
    rad_mons = standard_monomials(rad)
    rad_index = {e: i for i, e in enumerate(rad_mons)}
    rad_var_mats = _variable_matrices(rad, rad_mons)

    for k in range(SEPARATING_CANDIDATES):
        weights = [Fraction(k) ** j for j in range(n)]
        m_ell = _combine(var_mats, weights)
        chi = charpoly(m_ell)
        if univar.deg(univar.squarefree_part(chi)) != npoints:
            continue
        # l separates the points: distinct eigenvalue count is maximal
        coords = _coordinate_functions(ideal, rad, rad_mons, rad_index,
                                       rad_var_mats, weights, npoints)
        entries = _split_solutions(ideal, chi, coords)
        sol = ZeroDimSolution(tuple(entries), dim, npoints, k)
        assert sol.total_multiplicity() == dim
        return sol
    raise SeparatingFormError(
        f"no separating form among {SEPARATING_CANDIDATES} candidates")


def _coordinate_functions(ideal: Ideal, rad: Ideal, rad_mons: Sequence[Exp],
                          rad_index: dict[Exp, int],
                          rad_var_mats: Sequence[Sequence[Sequence[Fraction]]],
                          weights: Sequence[Fraction],
                          npoints: int) -> list[Coeffs]:
    """Express each coordinate as a polynomial in the separating form.

    On the (etale) quotient by the radical the powers 1, l, ..., l^(N-1) are
    a basis exactly when l separates, so solving one linear system per
    coordinate recovers x_i = r_i(l) on the solution set.
    """
    n = ideal.nvars
    r_ell = _combine(rad_var_mats, weights)
    one = [Fraction(0)] * len(rad_mons)
    one[rad_index[(0,) * n]] = Fraction(1)
    powers = [one]
    for _ in range(npoints - 1):
        prev = powers[-1]
        powers.append([sum((r_ell[i][j] * prev[j] for j in range(len(prev))),
                           Fraction(0)) for i in range(len(prev))])
    p_mat = [[powers[j][i] for j in range(npoints)] for i in range(len(rad_mons))]
    # p_mat is (dim_rad) x npoints with dim_rad == npoints
    inv = invert_rational(p_mat)
    assert inv is not None, "powers of a separating form must be a basis"
    rs: list[Coeffs] = []
    for i in range(n):
        xi_vec = [[v] for v in _nf_vector(MultiPoly.variable(n, i), rad,
                                          rad_mons, rad_index)]
        sol = mat_mul_rational(inv, xi_vec)
        rs.append(univar._trim([row[0] for row in sol]))
    return rs


def _split_solutions(ideal: Ideal, chi: Coeffs,
                     coords: Sequence[Coeffs]) -> list[RationalSolution | OrbitSolution]:
    n = ideal.nvars
    entries: list[RationalSolution | OrbitSolution] = []
    for factor, mult in univar.factor_rational(chi):
        d = univar.deg(factor)
        if d == 1:
            lam = -factor[0]
            point = tuple(univar.evaluate(r, lam) for r in coords)
            for g in ideal.gens:
                assert g.evaluate(point) == 0, "eigenvalue produced a non-solution"
            entries.append(RationalSolution(point, mult))
        else:
            field = NumberField(factor)
            residues = tuple(field.reduce(r) for r in coords)
            for g in ideal.gens:
                assert not _eval_at_orbit(g, residues, field), \
                    "orbit residues fail the equations"
            entries.append(OrbitSolution(factor, d, mult, residues))
    entries.sort(key=_entry_sort_key)
    return entries


def _entry_sort_key(e: RationalSolution | OrbitSolution):
    if isinstance(e, RationalSolution):
        return (0, e.point, 0)
    return (1, e.min_poly, e.degree)
