"""Buchberger-based ideal arithmetic over Q.

Provides reduced Gröbner bases (sugar strategy, both classical pair
criteria), normal forms, ideal intersection/quotient/saturation, variable
elimination, Hilbert series data (series numerator by inclusion-exclusion on
the leading-term ideal, Hilbert polynomial, projective dimension) and the
Nullstellensatz consistency test.

Gröbner bases over Q remain Gröbner bases over any field extension, so every
consistency, rank or dimension statement derived here is valid over the
algebraic closure; call sites that rely on this say so.
"""

from __future__ import annotations

import contextlib
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .linalg import _bareiss_echelon, mat_copy
from .poly import (Exp, MultiPoly, exp_div, exp_divides, exp_lcm, exp_mul,
                   grevlex_key, polys_ring)

# ---------------------------------------------------------------------------
# term orders
# ---------------------------------------------------------------------------


class GrevLex:
    """Graded reverse lexicographic order (the package default)."""

    tag = "grevlex"

    @staticmethod
    def key(e: Exp) -> tuple:
        return grevlex_key(e)


class BlockElim:
    """Elimination order: the block of eliminated variables dominates.

    Within each block the tie-break is grevlex, so a leading term free of the
    eliminated variables certifies the whole polynomial is.
    """

    def __init__(self, nvars: int, elim: Iterable[int]):
        self.elim = tuple(sorted(elim))
        self.keep = tuple(i for i in range(nvars) if i not in self.elim)
        self.tag = f"elim{self.elim}"

    def key(self, e: Exp) -> tuple:
        eblk = tuple(e[i] for i in self.elim)
        kblk = tuple(e[i] for i in self.keep)
        return (sum(eblk), tuple(-v for v in reversed(eblk)),
                sum(kblk), tuple(-v for v in reversed(kblk)))


GREVLEX = GrevLex()

# ---------------------------------------------------------------------------
# reduction and Buchberger's algorithm
# ---------------------------------------------------------------------------


def _leading(terms: dict[Exp, Fraction], order) -> Exp:
    return max(terms, key=order.key)


def reduce_full(p: MultiPoly, basis: Sequence[MultiPoly], order=GREVLEX) -> MultiPoly:
    """Complete normal form of ``p`` modulo ``basis`` (every term reduced)."""
    info = [(g.terms and max(g.terms, key=order.key), g) for g in basis if g]
    info = [(lt, g.terms[lt], g) for lt, g in info if lt is not None]
    work = dict(p.terms)
    remainder: dict[Exp, Fraction] = {}
    while work:
        e = _leading(work, order)
        c = work[e]
        hit = next(((lt, lc, g) for lt, lc, g in info if exp_divides(lt, e)), None)
        if hit is None:
            remainder[e] = c
            del work[e]
            continue
        lt, lc, g = hit
        factor = c / lc
        shift = exp_div(e, lt)
        for ge, gc in g.terms.items():
            ne = exp_mul(ge, shift)
            s = work.get(ne, Fraction(0)) - factor * gc
            if s:
                work[ne] = s
            elif ne in work:
                del work[ne]
    return MultiPoly(p.nvars, remainder, _clean=True)


def s_polynomial(f: MultiPoly, g: MultiPoly, order=GREVLEX) -> MultiPoly:
    lf = max(f.terms, key=order.key)
    lg = max(g.terms, key=order.key)
    lcm = exp_lcm(lf, lg)
    mf = MultiPoly.monomial(f.nvars, exp_div(lcm, lf), 1 / f.terms[lf])
    mg = MultiPoly.monomial(g.nvars, exp_div(lcm, lg), 1 / g.terms[lg])
    return mf * f - mg * g


def span_reduce(gens: Sequence[MultiPoly]) -> list[MultiPoly]:
    """Row-reduce the generators over their monomial support.

    The output spans the same linear space, so it generates the same ideal;
    large redundant systems (e.g. minor ideals) collapse drastically.
    """
    gens = [g for g in gens if not g.is_zero()]
    if len(gens) <= 1:
        return list(gens)
    nvars = gens[0].nvars
    support = sorted({e for g in gens for e in g.terms}, key=grevlex_key,
                     reverse=True)
    index = {e: i for i, e in enumerate(support)}
    rows = []
    for g in gens:
        row = [Fraction(0)] * len(support)
        for e, c in g.terms.items():
            row[index[e]] = c
        rows.append(row)
    m = mat_copy(rows)
    rank, _, _ = _bareiss_echelon(m)
    out = []
    for i in range(rank):
        terms = {support[j]: m[i][j] for j in range(len(support)) if m[i][j]}
        out.append(MultiPoly(nvars, terms, _clean=True).monic())
    return out


def buchberger(gens: Sequence[MultiPoly], order=GREVLEX) -> list[MultiPoly]:
    """Reduced Gröbner basis of the ideal generated by ``gens``.

    Strategy: span-reduced input, sugar pair selection, product and chain
    criteria, full reductions.  The empty list is returned for the zero
    ideal; ``[1]`` certifies the unit ideal (short-circuited as soon as a
    constant appears).
    """
    gens = span_reduce(gens)
    if not gens:
        return []
    one = [MultiPoly.const(gens[0].nvars, 1)]
    basis: list[MultiPoly] = []
    sugars: list[int] = []
    lts: list[Exp] = []

    def add_element(g: MultiPoly, sugar: int) -> bool:
        """Append a monic element; True when the ideal is the whole ring."""
        if g.is_constant():
            return True
        basis.append(g.monic())
        sugars.append(sugar)
        lts.append(max(g.terms, key=order.key))
        return False

    for g in sorted(gens, key=lambda p: order.key(max(p.terms, key=order.key))):
        if add_element(g, g.total_degree()):
            return one

    def pair_data(i: int, j: int):
        lcm = exp_lcm(lts[i], lts[j])
        sugar = max(sugars[i] + sum(exp_div(lcm, lts[i])),
                    sugars[j] + sum(exp_div(lcm, lts[j])))
        return sugar, order.key(lcm), lcm

    pairs: dict[tuple[int, int], tuple] = {
        (i, j): pair_data(i, j) for j in range(len(basis)) for i in range(j)}

    while pairs:
        best = min(pairs, key=lambda ij: (pairs[ij][0], pairs[ij][1], ij))
        sugar, _, lcm = pairs.pop(best)
        i, j = best
        if lcm == exp_mul(lts[i], lts[j]):
            continue  # product criterion: coprime leading terms
        chain = any(k != i and k != j and exp_divides(lts[k], lcm)
                    and (min(i, k), max(i, k)) not in pairs
                    and (min(j, k), max(j, k)) not in pairs
                    for k in range(len(basis)))
        if chain:
            continue
        h = reduce_full(s_polynomial(basis[i], basis[j], order), basis, order)
        if h.is_zero():
            continue
        if add_element(h, sugar):
            return one
        new = len(basis) - 1
        pairs.update({(k, new): pair_data(k, new) for k in range(new)})
    return interreduce(basis, order)


def interreduce(basis: Sequence[MultiPoly], order=GREVLEX) -> list[MultiPoly]:
    """Minimal, fully reduced, monic basis in ascending leading-term order."""
    items = sorted((g for g in basis if not g.is_zero()),
                   key=lambda p: order.key(max(p.terms, key=order.key)))
    minimal: list[MultiPoly] = []
    lts: list[Exp] = []
    for g in items:
        lt = max(g.terms, key=order.key)
        if not any(exp_divides(m, lt) for m in lts):
            minimal.append(g)
            lts.append(lt)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        r = reduce_full(g, others, order)
        if not r.is_zero():
            out.append(r.monic())
    out.sort(key=lambda p: order.key(max(p.terms, key=order.key)))
    return out


# audit registry: when active, every computed basis is recorded so the
# acceptance suite can re-check the Buchberger criterion on all of them
_AUDIT: list | None = None


@contextlib.contextmanager
def audit_bases():
    """Collect (generators, order, basis) triples for every basis computed."""
    global _AUDIT
    saved = _AUDIT
    _AUDIT = []
    try:
        yield _AUDIT
    finally:
        _AUDIT = saved


def groebner_basis(gens: Sequence[MultiPoly], order=GREVLEX) -> list[MultiPoly]:
    basis = buchberger(gens, order)
    if _AUDIT is not None:
        _AUDIT.append((tuple(gens), order, tuple(basis)))
    return basis


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------


class Ideal:
    """A finitely generated ideal with cached Gröbner bases per term order."""

    __slots__ = ("nvars", "gens", "homogeneous", "_gb")

    def __init__(self, gens: Sequence[MultiPoly], nvars: int | None = None):
        gens = [g for g in gens if not g.is_zero()]
        if nvars is None:
            nvars = polys_ring(gens) if gens else 0
        for g in gens:
            if g.nvars != nvars:
                raise ValueError("generator in a different ring")
        self.nvars = nvars
        self.gens: tuple[MultiPoly, ...] = tuple(gens)
        self.homogeneous = all(g.is_homogeneous() for g in gens)
        self._gb: dict[str, tuple[MultiPoly, ...]] = {}

    def groebner(self, order=GREVLEX) -> tuple[MultiPoly, ...]:
        gb = self._gb.get(order.tag)
        if gb is None:
            gb = tuple(groebner_basis(self.gens, order))
            self._gb[order.tag] = gb
        return gb

    def normal_form(self, p: MultiPoly, order=GREVLEX) -> MultiPoly:
        return reduce_full(p, self.groebner(order), order)

    def contains(self, p: MultiPoly) -> bool:
        return self.normal_form(p).is_zero()

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self) -> bool:
        return not self.groebner()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.nvars == other.nvars and self.groebner() == other.groebner()

    def __hash__(self) -> int:
        return hash((self.nvars, self.groebner()))

    def __repr__(self) -> str:
        return f"Ideal({[str(g) for g in self.gens]})"


def normal_form(p: MultiPoly, ideal: Ideal, order=GREVLEX) -> MultiPoly:
    """Normal form of p; zero exactly when p lies in the ideal."""
    return ideal.normal_form(p, order)


def has_solution_over_closure(ideal: Ideal) -> bool:
    """Nonempty affine vanishing locus over the algebraic closure.

    By the Nullstellensatz this holds iff the reduced basis is not {1}; the
    basis is computed over Q but stays a basis over C.
    """
    return not ideal.is_unit()


def exact_divide(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Quotient f/g for exactly divisible f; raises otherwise."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    q_terms: dict[Exp, Fraction] = {}
    rest = f
    lt_g = g.leading_exp()
    lc_g = g.terms[lt_g]
    while not rest.is_zero():
        lt = rest.leading_exp()
        if not exp_divides(lt_g, lt):
            raise ValueError("division is not exact")
        shift = exp_div(lt, lt_g)
        c = rest.terms[lt] / lc_g
        q_terms[shift] = c
        rest = rest - MultiPoly.monomial(f.nvars, shift, c) * g
    return MultiPoly(f.nvars, q_terms)


def _graded_pieces(polys: Iterable[MultiPoly]) -> list[MultiPoly]:
    """Split generators of a homogeneous ideal into their graded components.

    Sound only when the generated ideal is known homogeneous; the components
    of any member then lie in the ideal as well.
    """
    out = []
    for g in polys:
        degs = sorted({sum(e) for e in g.terms})
        if len(degs) <= 1:
            out.append(g)
        else:
            out.extend(g.homogeneous_part(d) for d in degs)
    return out


def ideal_intersection(a: Ideal, b: Ideal) -> Ideal:
    """Intersection via the single-tag trick: eliminate t from tA + (1-t)B."""
    n = a.nvars
    t = MultiPoly.variable(n + 1, n)
    one_minus_t = MultiPoly.const(n + 1, 1) - t
    gens = [t * f.extend_vars(1) for f in a.gens]
    gens += [one_minus_t * g.extend_vars(1) for g in b.gens]
    order = BlockElim(n + 1, (n,))
    gb = groebner_basis(gens, order)
    kept = [g.drop_var(n) for g in gb if all(e[n] == 0 for e in g.terms)]
    if a.homogeneous and b.homogeneous:
        kept = _graded_pieces(kept)
    return Ideal(kept, n)


def ideal_quotient(a: Ideal, g: MultiPoly) -> Ideal:
    """The colon ideal (a : g)."""
    if g.is_zero():
        raise ZeroDivisionError("quotient by the zero polynomial")
    inter = ideal_intersection(a, Ideal([g], a.nvars))
    return Ideal([exact_divide(f, g) for f in inter.gens], a.nvars)


def ideal_quotient_ideal(a: Ideal, b: Ideal) -> Ideal:
    """The colon ideal (a : b) for an ideal b."""
    if not b.gens:
        raise ValueError("quotient by the zero ideal")
    result: Ideal | None = None
    for g in b.gens:
        q = ideal_quotient(a, g)
        result = q if result is None else ideal_intersection(result, q)
    assert result is not None
    return result


def saturation(a: Ideal, b: Ideal) -> Ideal:
    """The saturation (a : b^infinity), by iterating the colon ideal."""
    current = a
    while True:
        nxt = ideal_quotient_ideal(current, b)
        if nxt == current:
            return current
        current = nxt


def eliminate(a: Ideal, variables: Iterable[int]) -> Ideal:
    """Intersection with the subring omitting the given variables.

    The result lives in the same ring; its generators do not involve the
    eliminated variables.
    """
    elim = tuple(sorted(set(variables)))
    order = BlockElim(a.nvars, elim)
    gb = a.groebner(order)
    kept = [g for g in gb
            if all(e[i] == 0 for e in g.terms for i in elim)]
    if a.homogeneous:
        kept = _graded_pieces(kept)
    return Ideal(kept, a.nvars)


def irrelevant_ideal(nvars: int) -> Ideal:
    return Ideal([MultiPoly.variable(nvars, i) for i in range(nvars)], nvars)


# ---------------------------------------------------------------------------
# Hilbert series and Hilbert polynomial
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HilbertPoly:
    """Hilbert polynomial; ``coeffs[k]`` is the coefficient of n^k.

    The empty tuple encodes the zero polynomial (finite quotient).  The
    attached ``bound`` is a degree from which on the polynomial agrees with
    the Hilbert function.
    """

    coeffs: tuple[Fraction, ...]
    bound: int = 0

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, m: int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * m + c
        return acc

    def same_polynomial(self, other: "HilbertPoly") -> bool:
        return self.coeffs == other.coeffs

    def format(self) -> str:
        """Compact rendering, e.g. ``3n+1`` or ``(1/6)n^3+n^2+(11/6)n+1``."""
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            coef = "" if (mag == 1 and k > 0) else (
                str(mag) if mag.denominator == 1 else f"({mag})")
            var = "" if k == 0 else ("n" if k == 1 else f"n^{k}")
            body = f"{coef}{var}" or "0"
            parts.append(("-" if c < 0 else ("+" if parts else "")) + body)
        return "".join(parts) if parts else "0"


TWISTED_CUBIC_HP = HilbertPoly((Fraction(1), Fraction(3)))


def leading_term_ideal(ideal: Ideal, order=GREVLEX) -> list[Exp]:
    """Minimal monomial generators of the leading-term ideal."""
    gb = ideal.groebner(order)
    lts = [max(g.terms, key=order.key) for g in gb]
    minimal = []
    for e in sorted(lts, key=grevlex_key):
        if not any(exp_divides(m, e) for m in minimal):
            minimal.append(e)
    return minimal


def hilbert_numerator(lt_gens: Sequence[Exp], nvars: int) -> list[int]:
    """Numerator of the Hilbert series of R/(monomial ideal) over (1-t)^n.

    Inclusion-exclusion over subsets of the minimal monomial generators.
    """
    if len(lt_gens) > 26:
        raise ValueError("too many monomial generators for inclusion-exclusion")
    coeffs: dict[int, int] = {0: 1}
    gens = sorted(lt_gens, key=grevlex_key)

    def walk(start: int, lcm: Exp, sign: int) -> None:
        for i in range(start, len(gens)):
            new = exp_lcm(lcm, gens[i])
            d = sum(new)
            coeffs[d] = coeffs.get(d, 0) - sign
            walk(i + 1, new, -sign)

    walk(0, (0,) * nvars, 1)
    out = [0] * (max(coeffs) + 1)
    for d, c in coeffs.items():
        out[d] = c
    while out and out[-1] == 0:
        out.pop()
    return out


def _binomial_poly(offset: int, top: int) -> list[Fraction]:
    """Coefficients of the polynomial m -> C(m + offset, top)."""
    coeffs = [Fraction(1)]
    for j in range(top):
        # multiply by (m + offset - j)
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k] += c * (offset - j)
            nxt[k + 1] += c
        coeffs = nxt
    fact = 1
    for j in range(1, top + 1):
        fact *= j
    return [c / fact for c in coeffs]


def hilbert_polynomial(ideal: Ideal, order=GREVLEX) -> HilbertPoly:
    """Hilbert polynomial of R/I for a homogeneous ideal I."""
    if not ideal.homogeneous:
        raise ValueError("Hilbert polynomial requires a homogeneous ideal")
    n = ideal.nvars
    gb = ideal.groebner(order)
    if len(gb) == 1 and gb[0].is_constant():
        return HilbertPoly((), 0)
    num = hilbert_numerator(leading_term_ideal(ideal, order), n)
    # cancel (1 - t) factors: synthetic division while num(1) == 0
    cancels = 0
    while cancels < n and sum(num) == 0:
        new = [0] * (len(num) - 1)
        acc = 0
        # num(t) = (1 - t) * q(t): q_k = sum_{i <= k} num_i
        for k in range(len(num) - 1):
            acc += num[k]
            new[k] = acc
        num = new
        while num and num[-1] == 0:
            num.pop()
        cancels += 1
    s = n - cancels
    if s == 0 or not num:
        bound = len(num)  # Hilbert function vanishes from deg(num)+1 on
        return HilbertPoly((), bound)
    coeffs = [Fraction(0)] * s
    for i, c in enumerate(num):
        if c == 0:
            continue
        part = _binomial_poly(s - 1 - i, s - 1)
        for k, v in enumerate(part):
            coeffs[k] += c * v
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    bound = max(0, len(num) - s)
    return HilbertPoly(tuple(coeffs), bound)


def proj_dimension(ideal: Ideal, order=GREVLEX) -> int:
    """Dimension of the projective vanishing locus; -1 when it is empty."""
    hp = hilbert_polynomial(ideal, order)
    return hp.degree()


def zero_scheme_degree(ideal: Ideal) -> int:
    """Degree of a zero-dimensional projective scheme (constant HP value)."""
    hp = hilbert_polynomial(ideal)
    if hp.degree() != 0:
        raise ValueError("scheme is not zero-dimensional")
    value = hp.coeffs[0]
    assert value.denominator == 1
    return int(value)


# ---------------------------------------------------------------------------
# graded pieces by plain linear algebra (no Gröbner involvement)
# ---------------------------------------------------------------------------


def monomials_of_degree(nvars: int, d: int) -> list[Exp]:
    """All exponent tuples of total degree d, descending grevlex."""
    out = [tuple(e) for e in _compositions(d, nvars)]
    out.sort(key=grevlex_key, reverse=True)
    return out


def _compositions(d: int, parts: int):
    if parts == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for rest in _compositions(d - first, parts - 1):
            yield (first,) + rest


def graded_piece_basis(gens: Sequence[MultiPoly], d: int) -> list[MultiPoly]:
    """Basis of the degree-d part of the ideal generated by ``gens``.

    Pure linear algebra over the monomial multiples of the generators; usable
    as an independent oracle against Gröbner-derived dimensions.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    n = polys_ring(gens)
    mons = monomials_of_degree(n, d)
    index = {e: i for i, e in enumerate(mons)}
    rows = []
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError("graded piece requires homogeneous generators")
        dg = g.total_degree()
        if dg > d:
            continue
        for shift in monomials_of_degree(n, d - dg):
            row = [Fraction(0)] * len(mons)
            for e, c in g.terms.items():
                row[index[exp_mul(e, shift)]] = c
            rows.append(row)
    if not rows:
        return []
    m = mat_copy(rows)
    rank, _, _ = _bareiss_echelon(m)
    basis = []
    for i in range(rank):
        terms = {mons[j]: m[i][j] for j in range(len(mons)) if m[i][j]}
        basis.append(MultiPoly(n, terms, _clean=True).monic())
    return basis


def graded_piece_dimension(gens: Sequence[MultiPoly], d: int) -> int:
    return len(graded_piece_basis(gens, d))


def hilbert_function_bruteforce(ideal: Ideal, d: int) -> int:
    """dim of the degree-d piece of R/I by exact linear algebra (oracle)."""
    total = comb(d + ideal.nvars - 1, ideal.nvars - 1)
    return total - graded_piece_dimension(ideal.gens, d)


def buchberger_criterion_holds(basis: Sequence[MultiPoly], order=GREVLEX) -> bool:
    """Every S-polynomial of the basis reduces to zero (direct check)."""
    basis = [g for g in basis if not g.is_zero()]
    for f, g in itertools.combinations(basis, 2):
        if not reduce_full(s_polynomial(f, g, order), basis, order).is_zero():
            return False
    return True
