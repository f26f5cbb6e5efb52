"""Exact multivariate polynomials over the rationals.

A polynomial is stored sparsely as a map from exponent tuples to nonzero
``Fraction`` coefficients.  The number of variables is fixed per polynomial;
variables are positional, displayed as ``x0, x1, ...`` and accepted on input
under the alias letters ``x``, ``z`` and ``t`` (mapped positionally).

The monomial order used throughout the package is graded reverse
lexicographic: higher total degree wins, ties are broken in favour of the
monomial whose *last* differing exponent is smaller.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

Exp = tuple[int, ...]

#: letters accepted for variables on input; output always uses the first one
VAR_LETTERS = "xzt"


def grevlex_key(e: Exp) -> tuple:
    """Sort key realising graded reverse lexicographic order via tuple compare."""
    return (sum(e), tuple(-v for v in reversed(e)))


def exp_mul(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def exp_divides(a: Exp, b: Exp) -> bool:
    """Whether the monomial with exponents `a` divides the one with `b`."""
    return all(x <= y for x, y in zip(a, b))


def exp_div(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


def exp_lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


class RingMismatchError(ValueError):
    """Operands live in polynomial rings with different variable counts."""


class MultiPoly:
    """Sparse exact polynomial in ``nvars`` variables with Fraction coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exp, Fraction] | None = None,
                 _clean: bool = False):
        self.nvars = nvars
        if terms is None:
            self.terms: dict[Exp, Fraction] = {}
        elif _clean:
            self.terms = dict(terms)
        else:
            self.terms = {e: Fraction(c) for e, c in terms.items() if c != 0}

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars, {}, _clean=True)

    @classmethod
    def const(cls, nvars: int, c) -> "MultiPoly":
        c = Fraction(c)
        if c == 0:
            return cls.zero(nvars)
        return cls(nvars, {(0,) * nvars: c}, _clean=True)

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPoly":
        e = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, {e: Fraction(1)}, _clean=True)

    @classmethod
    def monomial(cls, nvars: int, exp: Sequence[int], c=1) -> "MultiPoly":
        c = Fraction(c)
        if c == 0:
            return cls.zero(nvars)
        return cls(nvars, {tuple(exp): c}, _clean=True)

    # -- basic protocol -----------------------------------------------------

    def _check_ring(self, other: "MultiPoly") -> None:
        if self.nvars != other.nvars:
            raise RingMismatchError(
                f"polynomials in {self.nvars} and {other.nvars} variables")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()},
                         _clean=True)

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_ring(other)
        res = dict(self.terms)
        for e, c in other.terms.items():
            s = res.get(e, 0) + c
            if s:
                res[e] = s
            elif e in res:
                del res[e]
        return MultiPoly(self.nvars, res, _clean=True)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_ring(other)
        res = dict(self.terms)
        for e, c in other.terms.items():
            s = res.get(e, 0) - c
            if s:
                res[e] = s
            elif e in res:
                del res[e]
        return MultiPoly(self.nvars, res, _clean=True)

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            self._check_ring(other)
            res: dict[Exp, Fraction] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = exp_mul(e1, e2)
                    s = res.get(e, 0) + c1 * c2
                    if s:
                        res[e] = s
                    elif e in res:
                        del res[e]
            return MultiPoly(self.nvars, res, _clean=True)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "MultiPoly":
        c = Fraction(c)
        if c == 0:
            return MultiPoly.zero(self.nvars)
        return MultiPoly(self.nvars,
                         {e: k * c for e, k in self.terms.items()}, _clean=True)

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- structure queries --------------------------------------------------

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def leading_exp(self) -> Exp:
        """Greatest exponent under grevlex.  Raises on the zero polynomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=grevlex_key)

    def leading_coeff(self) -> Fraction:
        return self.terms[self.leading_exp()]

    def monic(self) -> "MultiPoly":
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coeff())

    def coeff(self, exp: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def constant_coeff(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def used_vars(self) -> tuple[int, ...]:
        used = [False] * self.nvars
        for e in self.terms:
            for i, v in enumerate(e):
                if v:
                    used[i] = True
        return tuple(i for i, u in enumerate(used) if u)

    def sorted_terms(self) -> list[tuple[Exp, Fraction]]:
        """Terms in descending grevlex order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]),
                      reverse=True)

    def __iter__(self) -> Iterator[tuple[Exp, Fraction]]:
        return iter(self.sorted_terms())

    # -- calculus and substitution ------------------------------------------

    def partial(self, i: int) -> "MultiPoly":
        """Partial derivative with respect to variable ``i``."""
        res: dict[Exp, Fraction] = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                res[ne] = res.get(ne, Fraction(0)) + c * e[i]
        return MultiPoly(self.nvars, res)

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly(self.nvars,
                         {e: c for e, c in self.terms.items() if sum(e) == d},
                         _clean=True)

    def evaluate(self, point: Sequence) -> Fraction:
        """Exact evaluation at a rational point."""
        if len(point) != self.nvars:
            raise RingMismatchError("point length does not match variable count")
        pt = [Fraction(v) for v in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    v *= pt[i] ** k
            total += v
        return total

    def subs_polys(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute ``images[i]`` for variable ``i``; images share one ring."""
        if len(images) != self.nvars:
            raise RingMismatchError("need one image polynomial per variable")
        n_out = images[0].nvars
        for g in images:
            if g.nvars != n_out:
                raise RingMismatchError("image polynomials in different rings")
        result = MultiPoly.zero(n_out)
        # cache powers of each image
        powers: list[list[MultiPoly]] = [[MultiPoly.const(n_out, 1)] for _ in images]
        for e, c in self.terms.items():
            term = MultiPoly.const(n_out, c)
            for i, k in enumerate(e):
                if not k:
                    continue
                cache = powers[i]
                while len(cache) <= k:
                    cache.append(cache[-1] * images[i])
                term = term * cache[k]
            result = result + term
        return result

    def subs_linear(self, matrix: Sequence[Sequence]) -> "MultiPoly":
        """Apply an invertible linear change of coordinates.

        Variable ``i`` is replaced by ``sum_j matrix[i][j] * x_j``.  Raises
        ``ValueError`` when the matrix is not square of size nvars or not
        invertible.
        """
        from .linalg import det_rational  # local import, avoids cycle at load

        n = self.nvars
        rows = [[Fraction(v) for v in row] for row in matrix]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("change-of-coordinates matrix has wrong shape")
        if det_rational(rows) == 0:
            raise ValueError("change-of-coordinates matrix is not invertible")
        images = []
        for i in range(n):
            img = MultiPoly(n, {tuple(1 if j == k else 0 for k in range(n)): rows[i][j]
                                for j in range(n) if rows[i][j] != 0})
            images.append(img)
        return self.subs_polys(images)

    def substitute_value(self, i: int, value) -> "MultiPoly":
        """Set variable ``i`` to a rational constant, keeping the ring."""
        v = Fraction(value)
        res: dict[Exp, Fraction] = {}
        for e, c in self.terms.items():
            ne = e[:i] + (0,) + e[i + 1:]
            nc = c * v ** e[i]
            if nc:
                s = res.get(ne, Fraction(0)) + nc
                if s:
                    res[ne] = s
                elif ne in res:
                    del res[ne]
        return MultiPoly(self.nvars, res)

    def drop_var(self, i: int) -> "MultiPoly":
        """Remove variable ``i``; it must not occur in any term."""
        res: dict[Exp, Fraction] = {}
        for e, c in self.terms.items():
            if e[i]:
                raise ValueError(f"variable {i} still occurs")
            res[e[:i] + e[i + 1:]] = c
        return MultiPoly(self.nvars - 1, res, _clean=True)

    def dehomogenize(self, i: int) -> "MultiPoly":
        """Chart map: set variable ``i`` to 1 and drop it from the ring."""
        return self.substitute_value(i, 1).drop_var(i)

    def extend_vars(self, extra: int) -> "MultiPoly":
        """Embed into the ring with ``extra`` additional trailing variables."""
        pad = (0,) * extra
        return MultiPoly(self.nvars + extra,
                         {e + pad: c for e, c in self.terms.items()}, _clean=True)

    def translate(self, point: Sequence) -> "MultiPoly":
        """Substitute ``x_i -> x_i + point[i]`` (move ``point`` to the origin)."""
        n = self.nvars
        images = []
        for i in range(n):
            img = MultiPoly.variable(n, i)
            c = Fraction(point[i])
            if c:
                img = img + MultiPoly.const(n, c)
            images.append(img)
        return self.subs_polys(images)

    # -- display ------------------------------------------------------------

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {poly_to_string(self)!r})"

    def __str__(self) -> str:
        return poly_to_string(self)


def poly_to_string(p: MultiPoly, letter: str = "x") -> str:
    """Render a polynomial; the output re-parses to an equal polynomial."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for e, c in p.sorted_terms():
        factors = [f"{letter}{i}" if k == 1 else f"{letter}{i}^{k}"
                   for i, k in enumerate(e) if k]
        mag = abs(c)
        if factors:
            body = "*".join(([] if mag == 1 else [str(mag)]) + factors)
        else:
            body = str(mag)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


class PolyParseError(ValueError):
    """Input text is not a polynomial in the accepted grammar."""


class _Parser:
    """Recursive-descent parser for +, -, *, ^ over rationals and variables.

    Grammar: rational coefficients (``3``, ``3/2``), ``*`` for products,
    ``^`` (or ``**``) for powers, variables ``x0..``/``z0..``/``t0..`` mapped
    positionally, parentheses allowed, whitespace insignificant.
    """

    def __init__(self, text: str, nvars: int):
        self.text = text
        self.pos = 0
        self.nvars = nvars

    def error(self, msg: str) -> PolyParseError:
        return PolyParseError(f"{msg} at position {self.pos} in {self.text!r}")

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> MultiPoly:
        p = self.parse_sum()
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error("trailing input")
        return p

    def parse_sum(self) -> MultiPoly:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.text[self.pos] == "-":
                sign = -sign
            self.pos += 1
        p = self.parse_product().scale(sign)
        while self.peek() in ("+", "-"):
            sign = 1
            while self.peek() in ("+", "-"):
                if self.text[self.pos] == "-":
                    sign = -sign
                self.pos += 1
            p = p + self.parse_product().scale(sign)
        return p

    def parse_product(self) -> MultiPoly:
        p = self.parse_power()
        while self.peek() == "*" and not self.text.startswith("**", self.pos):
            self.pos += 1
            p = p * self.parse_power()
        return p

    def parse_power(self) -> MultiPoly:
        base = self.parse_atom()
        self.skip_ws()
        if self.text.startswith("**", self.pos):
            self.pos += 2
        elif self.peek() == "^":
            self.pos += 1
        else:
            return base
        self.skip_ws()
        n = self.parse_integer()
        return base ** n

    def parse_integer(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])

    def parse_atom(self) -> MultiPoly:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            p = self.parse_sum()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return p
        if ch and ch in VAR_LETTERS:
            self.pos += 1
            idx = self.parse_integer()
            if not 0 <= idx < self.nvars:
                raise self.error(f"variable index {idx} out of range 0..{self.nvars - 1}")
            return MultiPoly.variable(self.nvars, idx)
        if ch and ch.isdigit():
            num = self.parse_integer()
            self.skip_ws()
            if self.peek() == "/":
                self.pos += 1
                den = self.parse_integer()
                if den == 0:
                    raise self.error("zero denominator")
                return MultiPoly.const(self.nvars, Fraction(num, den))
            return MultiPoly.const(self.nvars, num)
        raise self.error("expected a coefficient, variable or '('")


def parse_poly(text: str, nvars: int = 4) -> MultiPoly:
    """Parse polynomial text in the package grammar."""
    return _Parser(text, nvars).parse()


def polys_ring(polys: Iterable[MultiPoly]) -> int:
    """Common variable count of a nonempty family; raises on mismatch."""
    nv = None
    for p in polys:
        if nv is None:
            nv = p.nvars
        elif p.nvars != nv:
            raise RingMismatchError("mixed polynomial rings")
    if nv is None:
        raise ValueError("empty polynomial family")
    return nv


# ---------------------------------------------------------------------------
# multivariate gcd (primitive PRS)
# ---------------------------------------------------------------------------


def _as_univar_in(f: MultiPoly, m: int) -> dict[int, MultiPoly]:
    """View f as univariate in variable m with polynomial coefficients."""
    out: dict[int, MultiPoly] = {}
    for e, c in f.terms.items():
        d = e[m]
        base = e[:m] + (0,) + e[m + 1:]
        coeff = out.get(d)
        if coeff is None:
            out[d] = MultiPoly(f.nvars, {base: c}, _clean=True)
        else:
            out[d] = coeff + MultiPoly(f.nvars, {base: c}, _clean=True)
    return {d: p for d, p in out.items() if not p.is_zero()}


def _from_univar_in(parts: dict[int, MultiPoly], m: int, nvars: int) -> MultiPoly:
    total = MultiPoly.zero(nvars)
    for d, p in parts.items():
        total = total + p * MultiPoly.variable(nvars, m) ** d
    return total


def _deg_in(f: MultiPoly, m: int) -> int:
    return max((e[m] for e in f.terms), default=-1)


def _lead_coeff_in(f: MultiPoly, m: int) -> MultiPoly:
    parts = _as_univar_in(f, m)
    return parts[max(parts)]


def _pseudo_rem(f: MultiPoly, g: MultiPoly, m: int) -> MultiPoly:
    """Pseudo-remainder of f by g as univariate polynomials in variable m."""
    dg = _deg_in(g, m)
    lc_g = _lead_coeff_in(g, m)
    r = f
    while not r.is_zero() and _deg_in(r, m) >= dg:
        dr = _deg_in(r, m)
        lc_r = _lead_coeff_in(r, m)
        shift = MultiPoly.variable(f.nvars, m) ** (dr - dg)
        r = lc_g * r - lc_r * shift * g
    return r


def poly_content_in(f: MultiPoly, m: int) -> MultiPoly:
    """gcd of the coefficients of f viewed as univariate in variable m."""
    parts = _as_univar_in(f, m)
    return poly_gcd_list(list(parts.values()))


def poly_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """gcd over Q, normalised monic with respect to grevlex.

    Primitive pseudo-remainder sequences, recursing through the variables
    actually used; inputs here are tiny (entries of adjugates and minors).
    """
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd of two zero polynomials")
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    used = sorted(set(f.used_vars()) | set(g.used_vars()))
    if not used:
        return MultiPoly.const(f.nvars, 1)
    if len(used) == 1:
        from . import univar
        ca, _ = univar.uni_from_multipoly(f)
        cb, _ = univar.uni_from_multipoly(g)
        return univar.uni_to_multipoly(univar.gcd(ca, cb), f.nvars, used[0])
    m = used[-1]
    if _deg_in(f, m) == 0 or _deg_in(g, m) == 0:
        # one input is free of m after all; gcd divides both contents
        cf = poly_content_in(f, m)
        cg = poly_content_in(g, m)
        return poly_gcd(cf, cg)
    cf = poly_content_in(f, m)
    cg = poly_content_in(g, m)
    pf = exact_poly_div(f, cf)
    pg = exact_poly_div(g, cg)
    if _deg_in(pf, m) < _deg_in(pg, m):
        pf, pg = pg, pf
    while not pg.is_zero():
        r = _pseudo_rem(pf, pg, m)
        if not r.is_zero():
            r = exact_poly_div(r, poly_content_in(r, m))
        pf, pg = pg, r
    return (poly_gcd(cf, cg) * exact_poly_div(pf, poly_content_in(pf, m))).monic()


def poly_gcd_list(ps: Sequence[MultiPoly]) -> MultiPoly:
    ps = [p for p in ps if not p.is_zero()]
    if not ps:
        raise ValueError("gcd of an empty or all-zero family")
    acc = ps[0].monic()
    for p in ps[1:]:
        if acc.is_constant():
            break
        acc = poly_gcd(acc, p)
    return acc


def exact_poly_div(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Quotient f/g when g divides f exactly; raises otherwise."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if f.is_zero():
        return MultiPoly.zero(f.nvars)
    lt_g = g.leading_exp()
    lc_g = g.terms[lt_g]
    quot: dict[Exp, Fraction] = {}
    rest = f
    while not rest.is_zero():
        lt = rest.leading_exp()
        if not exp_divides(lt_g, lt):
            raise ValueError("polynomial division is not exact")
        shift = exp_div(lt, lt_g)
        c = rest.terms[lt] / lc_g
        quot[shift] = c
        rest = rest - MultiPoly.monomial(f.nvars, shift, c) * g
    return MultiPoly(f.nvars, quot)
