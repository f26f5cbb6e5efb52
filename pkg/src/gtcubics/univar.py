"""Univariate utilities over Q: gcd, squarefree decomposition, factorization.

Internally univariate polynomials are dense coefficient lists
``[c0, c1, ...]`` (ascending powers) with Fraction entries and no trailing
zeros.  Thin wrappers translate from and to ``MultiPoly`` inputs that use a
single variable.  Irreducible factorization over Q is delegated to sympy;
everything else is hand-rolled Euclid.

The module also provides arithmetic in the field Q[t]/(q) for an irreducible
modulus q, used to take Hessian ranks at Galois orbits of singular points.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .poly import MultiPoly

Coeffs = tuple[Fraction, ...]


def _trim(c: list[Fraction]) -> Coeffs:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def uni_from_multipoly(p: MultiPoly) -> tuple[Coeffs, int]:
    """Coefficient list and the index of the single variable used.

    Constants report variable index -1.
    """
    used = p.used_vars()
    if len(used) > 1:
        raise ValueError("polynomial is not univariate")
    var = used[0] if used else -1
    deg = p.total_degree()
    coeffs = [Fraction(0)] * (deg + 1 if deg >= 0 else 0)
    for e, c in p.terms.items():
        coeffs[e[var] if var >= 0 else 0] = c
    return _trim(coeffs), var


def uni_to_multipoly(coeffs: Sequence[Fraction], nvars: int, var: int) -> MultiPoly:
    terms = {}
    for k, c in enumerate(coeffs):
        if c:
            e = tuple(k if i == var else 0 for i in range(nvars))
            terms[e] = Fraction(c)
    return MultiPoly(nvars, terms, _clean=True)


def deg(c: Coeffs) -> int:
    return len(c) - 1


def is_zero(c: Coeffs) -> bool:
    return not c


def monic(c: Coeffs) -> Coeffs:
    if not c:
        return c
    lead = c[-1]
    if lead == 1:
        return c
    return tuple(v / lead for v in c)


def add(a: Coeffs, b: Coeffs) -> Coeffs:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] += v
    return _trim(out)


def scale(a: Coeffs, s: Fraction) -> Coeffs:
    if s == 0:
        return ()
    return tuple(v * s for v in a)


def mul(a: Coeffs, b: Coeffs) -> Coeffs:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, va in enumerate(a):
        if va:
            for j, vb in enumerate(b):
                if vb:
                    out[i + j] += va * vb
    return _trim(out)


def divmod_exact(a: Coeffs, b: Coeffs) -> tuple[Coeffs, Coeffs]:
    """Quotient and remainder of polynomial division (b nonzero)."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    for shift in range(len(a) - len(b), -1, -1):
        c = rem[shift + len(b) - 1] * inv_lead
        if c:
            q[shift] = c
            for j, vb in enumerate(b):
                rem[shift + j] -= c * vb
    return _trim(q), _trim(rem)


def derivative(a: Coeffs) -> Coeffs:
    return _trim([a[k] * k for k in range(1, len(a))])


def gcd(a: Coeffs, b: Coeffs) -> Coeffs:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) raises."""
    if not a and not b:
        raise ValueError("gcd of two zero polynomials")
    while b:
        _, r = divmod_exact(a, b)
        a, b = b, r
    return monic(a)


def squarefree_part(a: Coeffs) -> Coeffs:
    """Monic product of the distinct irreducible factors of ``a``."""
    if not a:
        raise ValueError("squarefree part of zero")
    if deg(a) == 0:
        return (Fraction(1),)
    g = gcd(a, derivative(a))
    q, r = divmod_exact(a, g)
    assert not r
    return monic(q)


def squarefree_decomposition(a: Coeffs) -> list[tuple[Coeffs, int]]:
    """Yun-style decomposition ``a = lc * prod f_i^i`` with squarefree f_i.

    Returns the nonconstant factors with their multiplicities, monic.
    """
    if not a:
        raise ValueError("squarefree decomposition of zero")
    a = monic(a)
    out: list[tuple[Coeffs, int]] = []
    if deg(a) == 0:
        return out
    g = gcd(a, derivative(a))
    w, r = divmod_exact(a, g)
    assert not r
    i = 1
    while deg(w) > 0:
        y = gcd(w, g)
        f, r = divmod_exact(w, y)
        assert not r
        if deg(f) > 0:
            out.append((monic(f), i))
        g_next, r = divmod_exact(g, y)
        assert not r
        w, g = y, g_next
        i += 1
    return out


def factor_rational(a: Coeffs) -> list[tuple[Coeffs, int]]:
    """Irreducible monic factors over Q with multiplicities (sympy-backed)."""
    import sympy

    if not a:
        raise ValueError("factorization of zero")
    t = sympy.Symbol("t")
    expr = sympy.Poly([sympy.Rational(c.numerator, c.denominator)
                       for c in reversed(a)], t, domain="QQ")
    _, factors = expr.factor_list()
    out: list[tuple[Coeffs, int]] = []
    for f, mult in factors:
        cs = [Fraction(c.p, c.q) for c in reversed(f.all_coeffs())]
        out.append((monic(_trim(cs)), int(mult)))
    out.sort(key=lambda fm: (deg(fm[0]), fm[0]))
    return out


def evaluate(a: Coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


# -- MultiPoly-facing wrappers (the spec-level operations) -------------------

def uni_gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Monic gcd of two univariate polynomials given as MultiPoly."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials")
    ca, va = uni_from_multipoly(p)
    cb, vb = uni_from_multipoly(q)
    if va >= 0 and vb >= 0 and va != vb:
        raise ValueError("gcd arguments use different variables")
    var = va if va >= 0 else vb
    g = gcd(ca, cb)
    return uni_to_multipoly(g, p.nvars, var if var >= 0 else 0)


def uni_squarefree(p: MultiPoly) -> list[tuple[MultiPoly, int]]:
    """Squarefree decomposition of a univariate MultiPoly (monic factors)."""
    c, var = uni_from_multipoly(p)
    if var < 0:
        if not c:
            raise ValueError("squarefree decomposition of zero")
        return []
    return [(uni_to_multipoly(f, p.nvars, var), m)
            for f, m in squarefree_decomposition(c)]


# -- arithmetic in K = Q[t]/(q), q irreducible -------------------------------

class NumberField:
    """The field Q[t]/(q) for a monic irreducible modulus q.

    Elements are coefficient tuples of length < deg(q).
    """

    def __init__(self, modulus: Coeffs):
        if deg(modulus) < 1:
            raise ValueError("modulus must be nonconstant")
        self.modulus = monic(modulus)
        self.degree = deg(self.modulus)

    def reduce(self, a: Coeffs) -> Coeffs:
        _, r = divmod_exact(a, self.modulus)
        return r

    def zero(self) -> Coeffs:
        return ()

    def one(self) -> Coeffs:
        return (Fraction(1),)

    def from_rational(self, c) -> Coeffs:
        c = Fraction(c)
        return (c,) if c else ()

    def generator(self) -> Coeffs:
        return self.reduce((Fraction(0), Fraction(1)))

    def add(self, a: Coeffs, b: Coeffs) -> Coeffs:
        return add(a, b)

    def sub(self, a: Coeffs, b: Coeffs) -> Coeffs:
        return add(a, scale(b, Fraction(-1)))

    def mul(self, a: Coeffs, b: Coeffs) -> Coeffs:
        return self.reduce(mul(a, b))

    def inv(self, a: Coeffs) -> Coeffs:
        """Inverse via extended Euclid; raises on zero."""
        if not a:
            raise ZeroDivisionError("inverse of zero in number field")
        r0, r1 = self.modulus, a
        s0: Coeffs = ()
        s1: Coeffs = (Fraction(1),)
        while r1:
            q, r = divmod_exact(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, add(s0, scale(mul(q, s1), Fraction(-1)))
        # r0 = gcd = unit since modulus is irreducible and a != 0
        if deg(r0) != 0:
            raise ZeroDivisionError("modulus is not irreducible or element is zero divisor")
        return self.reduce(scale(s0, 1 / r0[0]))
