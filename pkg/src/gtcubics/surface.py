"""Classification of cubic surfaces in P^3.

``classify`` sorts a nonzero cubic form into one of five classes: smooth,
ADE (at most rational double points), simple-elliptic (cone over a smooth
plane cubic), non-normal (1-dimensional singular locus) or non-integral
(reducible equation).  For the ADE class every singular point is located
exactly, typed through its Tjurina number, Hessian corank and (at corank 2)
the root structure of the residual binary cubic, and the whole configuration
is checked against the allowed list.

Singular points appear once each: a point is reported on the first chart
where its earlier homogeneous coordinates all vanish, which is Galois stable
and needs no cross-chart comparison.  Irrational points stay bundled in
their Galois orbits; Tjurina number and corank are Galois invariant, and the
corank is computed by elimination over Q[t]/(minimal polynomial).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import roots as rootmod
from .groebner import (Ideal, has_solution_over_closure, hilbert_polynomial,
                       irrelevant_ideal, proj_dimension, saturation,
                       zero_scheme_degree)
from .linalg import rank_over_field, rank_rational
from .matrices import LinearMatrix, mat_det
from .poly import MultiPoly, poly_to_string
from .univar import NumberField, squarefree_decomposition, uni_from_multipoly
from .zerodim import OrbitSolution, RationalSolution, zero_dim_solve

SMOOTH = "smooth"
ADE = "ADE"
SIMPLE_ELLIPTIC = "simple-elliptic"
NON_NORMAL = "non-normal"
NON_INTEGRAL = "non-integral"

SIMPLE_ELLIPTIC_CONFIG = "Ẽ6"

# prose list of rational-double-point configurations; the orbit-count table
# additionally contains A1+A4, which the validator accepts with a note
_PRINTED_LIST = set(rootmod.ALLOWED_ADE_CONFIGS)
_TABLE_ONLY = {"A1+A4"}


class ClassificationError(RuntimeError):
    """Internal inconsistency while classifying (reported, never swallowed)."""


@dataclass(frozen=True)
class SingularPoint:
    """One singular point (or one Galois orbit of conjugate points)."""

    point: tuple[Fraction, ...] | None
    orbit_degree: int
    type_label: str
    tjurina: int
    corank: int
    binary_cubic_roots: str | None = None

    def is_orbit(self) -> bool:
        return self.point is None

    def point_json(self):
        if self.point is None:
            return {"orbit_of_degree": self.orbit_degree}
        return [str(c) for c in self.point]


@dataclass(frozen=True)
class SurfaceReport:
    """Classification outcome in the shape of the CLI JSON schema."""

    surface_class: str
    configuration: str
    singularities: tuple[SingularPoint, ...] = ()
    families: tuple[int, int] | None = None
    notes: tuple[str, ...] = ()
    vertex: tuple[Fraction, ...] | None = None
    base_cubic: MultiPoly | None = None

    def to_json_dict(self) -> dict:
        out = {
            "class": self.surface_class,
            "configuration": self.configuration,
            "singularities": [
                {"point": s.point_json(), "type": s.type_label,
                 "tjurina": s.tjurina, "corank": s.corank}
                for s in self.singularities
            ],
            "families": ({"acm": self.families[0], "noncm": self.families[1]}
                         if self.families is not None else None),
            "notes": list(self.notes),
        }
        if self.vertex is not None:
            out["vertex"] = [str(c) for c in self.vertex]
        if self.base_cubic is not None:
            out["base_cubic"] = poly_to_string(self.base_cubic)
        return out


def validate_cubic(f: MultiPoly) -> None:
    if f.nvars != 4:
        raise ValueError("cubic surfaces live in 4 homogeneous variables")
    if f.is_zero():
        raise ValueError("the zero polynomial does not define a surface")
    if not f.is_homogeneous() or f.total_degree() != 3:
        raise ValueError("defining polynomial must be homogeneous of degree 3")


def jacobian_ideal(f: MultiPoly) -> Ideal:
    return Ideal([f.partial(i) for i in range(f.nvars)], f.nvars)


def has_linear_factor(f: MultiPoly) -> bool:
    """Reducibility test for a cubic: a factor must be linear.

    On each chart of the dual space substitute the solved coordinate of a
    parametric hyperplane into f; vanishing of all remainder coefficients is
    a polynomial system in the 3 parameters whose solvability over the
    closure (Gröbner consistency over Q) decides divisibility.
    """
    validate_cubic(f)
    for j in range(4):
        others = [i for i in range(4) if i != j]
        # ring: vars 0..2 are x_{others}, vars 3..5 are the parameters
        images: list[MultiPoly] = [MultiPoly.zero(6)] * 4
        for pos, i in enumerate(others):
            images[i] = MultiPoly.variable(6, pos)
        sub = MultiPoly.zero(6)
        for pos in range(3):
            sub = sub - MultiPoly.variable(6, 3 + pos) * MultiPoly.variable(6, pos)
        images[j] = sub
        g = f.subs_polys(images)
        # collect coefficients with respect to the x-part
        buckets: dict[tuple[int, int, int], dict] = {}
        for e, c in g.terms.items():
            xpart = e[:3]
            ppart = (0, 0, 0) + e[3:]
            buckets.setdefault(xpart, {})[ppart] = c
        system = [MultiPoly(6, terms) for terms in buckets.values()]
        system = [p.drop_var(0).drop_var(0).drop_var(0) for p in system]
        if has_solution_over_closure(Ideal(system, 3)):
            return True
    return False


def nonnormal_slice_classify(a, b, c) -> str:
    """Type of the non-normal slice-family member with parameters (a, b, c).

    The family degenerates along the discriminant a*b^2 + c^2.
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    disc = a * b * b + c * c
    if a == 0 and b == 0 and c == 0:
        return "X9"
    if a != 0 and b == 0 and c == 0:
        return "X8"
    if disc == 0 and b != 0:
        return "X7"
    if disc != 0:
        return "X6"
    # remaining: disc = 0, b = 0, (a, c) != (0, 0) forces c = 0, a != 0
    return "X8"


def verify_detrep(a: LinearMatrix, f: MultiPoly) -> tuple[bool, Fraction | None]:
    """Whether det(A) = c f for a nonzero rational scalar c; returns c."""
    validate_cubic(f)
    d = mat_det(a.entries)
    if d.is_zero():
        return False, None
    lead = f.leading_exp()
    c = d.coeff(lead) / f.terms[lead]
    if c != 0 and d == f.scale(c):
        return True, c
    return False, None


def allowed_config_validate(label: str) -> bool:
    """Membership in the printed configuration list (plus the table-only row).

    The empty configuration is allowed (smooth surface); A1+A4 is accepted
    because the orbit-count table lists it even though the prose list omits
    it; 3A1+A2 and anything else absent from the printed list is rejected.
    """
    try:
        canonical = rootmod.normalize_config(label)
    except rootmod.ConfigError:
        return False
    if canonical == "∅":
        return True
    return canonical in _PRINTED_LIST or canonical in _TABLE_ONLY


# ---------------------------------------------------------------------------
# local analysis at singular points
# ---------------------------------------------------------------------------


def _canonical_chart(point: Sequence[Fraction]) -> int:
    return next(i for i, c in enumerate(point) if c != 0)


def _local_equation(f: MultiPoly, point: Sequence[Fraction]) -> tuple[MultiPoly, int]:
    """Affine local equation with the point moved to the origin."""
    j = _canonical_chart(point)
    scale = 1 / point[j]
    affine = [point[i] * scale for i in range(4) if i != j]
    g = f.dehomogenize(j).translate(affine)
    assert g.constant_coeff() == 0, "point does not lie on the surface"
    return g, j


def _hessian_matrix(g: MultiPoly) -> list[list[Fraction]]:
    q = g.homogeneous_part(2)
    n = g.nvars
    h = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            e = [0] * n
            e[i] += 1
            e[j] += 1
            c = q.coeff(tuple(e))
            h[i][j] = c * (2 if i == j else 1)
    return h


def _binary_cubic_root_pattern(b: MultiPoly) -> list[int]:
    """Root multiplicities of a nonzero binary cubic, e.g. [2, 1].

    Includes the root at infinity; multiplicities over C read off from the
    squarefree decomposition over Q (field independent).
    """
    d = b.total_degree()
    deh = b.substitute_value(1, 1).drop_var(1)
    pattern: list[int] = []
    coeffs, _ = uni_from_multipoly(deh)
    inf_mult = d - (len(coeffs) - 1)
    if inf_mult:
        pattern.append(inf_mult)
    for fac, mult in squarefree_decomposition(coeffs):
        deg_fac = len(fac) - 1
        pattern.extend([mult] * deg_fac)
    pattern.sort(reverse=True)
    return pattern


def _type_from_local_data(tau: int, corank: int,
                          binary_pattern: list[int] | None) -> str:
    """ADE label from Tjurina number, Hessian corank and cubic residue."""
    if corank == 0:
        if tau != 1:
            raise ClassificationError(f"corank 0 forces tau = 1, got {tau}")
        return "A1"
    if corank == 1:
        if tau < 2:
            raise ClassificationError(f"corank 1 needs tau >= 2, got {tau}")
        return f"A{tau}"
    if corank == 2:
        if binary_pattern is None:
            # Galois orbit: the pattern is determined by tau on a cubic surface
            label = {4: "D4", 5: "D5", 6: "E6"}.get(tau)
            if label is None:
                raise ClassificationError(
                    f"corank 2 with tau = {tau} is impossible on a cubic surface")
            return label
        if binary_pattern == [1, 1, 1]:
            if tau != 4:
                raise ClassificationError(
                    f"three distinct residual roots force tau = 4, got {tau}")
            return "D4"
        if binary_pattern == [2, 1]:
            if tau < 5:
                raise ClassificationError(
                    f"a double residual root needs tau >= 5, got {tau}")
            return f"D{tau}"
        if binary_pattern == [3]:
            if tau != 6:
                raise ClassificationError(
                    f"a triple residual root forces tau = 6 (E6), got {tau}")
            return "E6"
        raise ClassificationError(
            f"degenerate residual cubic (pattern {binary_pattern})")
    raise ClassificationError(f"unexpected Hessian corank {corank}")


def ade_type_at_point(f: MultiPoly, point: Sequence[Fraction],
                      tjurina: int | None = None) -> str:
    """ADE label of an isolated rational singular point of f.

    The quadratic part of the local equation must not vanish (simple-elliptic
    points are routed elsewhere).  Tjurina number is taken from the local
    multiplicity in the Jacobian scheme when not supplied.
    """
    validate_cubic(f)
    pt = tuple(Fraction(c) for c in point)
    g, j = _local_equation(f, pt)
    if not g.homogeneous_part(1).is_zero():
        raise ValueError("point is not singular")
    if tjurina is None:
        tjurina = _local_tjurina(f, pt, j)
    hess = _hessian_matrix(g)
    corank = 3 - rank_rational(hess)
    if corank == 3:
        raise ValueError("quadratic part vanishes; use the simple-elliptic check")
    binary_pattern = None
    if corank == 2:
        binary_pattern = _binary_cubic_root_pattern(_residual_binary_cubic(g, hess))
    return _type_from_local_data(tjurina, corank, binary_pattern)


def _residual_binary_cubic(g: MultiPoly, hess: Sequence[Sequence[Fraction]]) -> MultiPoly:
    """Cubic part of g restricted to the kernel plane of the Hessian."""
    from .linalg import kernel_basis

    kernel = kernel_basis([list(r) for r in hess], ncols=3)
    if len(kernel) != 2:
        raise ClassificationError("Hessian corank is not 2")
    c3 = g.homogeneous_part(3)
    s = MultiPoly.variable(2, 0)
    t = MultiPoly.variable(2, 1)
    images = []
    for i in range(3):
        images.append(s.scale(kernel[0][i]) + t.scale(kernel[1][i]))
    b = c3.subs_polys(images)
    if b.is_zero():
        raise ClassificationError("cubic part vanishes on the Hessian kernel")
    return b


def _local_tjurina(f: MultiPoly, point: tuple[Fraction, ...], chart: int) -> int:
    """Local multiplicity of the point inside the chart Jacobian scheme."""
    sol = _chart_solution(f, chart)
    scale = 1 / point[chart]
    affine = tuple(point[i] * scale for i in range(4) if i != chart)
    for entry in sol.entries:
        if isinstance(entry, RationalSolution) and entry.point == affine:
            return entry.multiplicity
    raise ValueError("point is not singular on the surface")


def _chart_solution(f: MultiPoly, j: int):
    gens = [p.dehomogenize(j) for p in (f.partial(i) for i in range(4))]
    gens = [g for g in gens if not g.is_zero()]
    return zero_dim_solve(Ideal(gens, 3))


def simple_elliptic_check(f: MultiPoly, point: Sequence[Fraction]):
    """Cone test at a point with vanishing quadratic part.

    Returns (vertex, base plane cubic, smooth flag): the surface is the cone
    over the degree-3 part of its local equation; a smooth base certifies a
    simple-elliptic singularity.
    """
    validate_cubic(f)
    pt = tuple(Fraction(c) for c in point)
    g, _ = _local_equation(f, pt)
    if not g.homogeneous_part(1).is_zero():
        raise ValueError("point is not singular")
    if not g.homogeneous_part(2).is_zero():
        raise ValueError("quadratic part does not vanish")
    base = g.homogeneous_part(3)
    assert g == base, "a multiplicity-3 point on a cubic must be a cone vertex"
    base_jac = Ideal([base.partial(i) for i in range(3)], 3)
    smooth = proj_dimension(base_jac) == -1
    return pt, base, smooth


# ---------------------------------------------------------------------------
# the classifier
# ---------------------------------------------------------------------------


def _orbit_corank(f: MultiPoly, entry: OrbitSolution, chart: int) -> int:
    """Hessian corank at a Galois orbit, by elimination over Q[t]/(q)."""
    field = entry.field()
    g = f.dehomogenize(chart)
    n = 3
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            pij = g.partial(i).partial(j)
            row.append(_eval_in_field(pij, entry.coords, field))
        rows.append(row)
    return 3 - rank_over_field(rows, field)


def _eval_in_field(p: MultiPoly, coords, field: NumberField):
    total = field.zero()
    for e, c in p.terms.items():
        v = field.from_rational(c)
        for i, k in enumerate(e):
            for _ in range(k):
                v = field.mul(v, coords[i])
        total = field.add(total, v)
    return total


def _projective_from_affine(affine: Sequence[Fraction], chart: int) -> tuple[Fraction, ...]:
    coords = list(affine[:chart]) + [Fraction(1)] + list(affine[chart:])
    lead = next(c for c in coords if c)
    return tuple(c / lead for c in coords)


def classify(f: MultiPoly) -> SurfaceReport:
    """Full classification of a cubic surface; see the module docstring."""
    validate_cubic(f)
    if has_linear_factor(f):
        return SurfaceReport(NON_INTEGRAL, "")
    jac = jacobian_ideal(f)
    dim = proj_dimension(jac)
    if dim == -1:
        fam = rootmod.family_counts("∅")
        return SurfaceReport(SMOOTH, "∅", (), fam)
    if dim >= 1:
        return SurfaceReport(NON_NORMAL, "")

    notes: list[str] = []
    points: list[SingularPoint] = []
    vertex = None
    base_cubic = None
    for chart in range(4):
        sol = _chart_solution(f, chart)
        for entry in sol.entries:
            if isinstance(entry, RationalSolution):
                proj = _projective_from_affine(entry.point, chart)
                if _canonical_chart(proj) != chart:
                    continue  # already reported on an earlier chart
                g, _ = _local_equation(f, proj)
                if g.homogeneous_part(2).is_zero():
                    v, base, smooth = simple_elliptic_check(f, proj)
                    if not smooth:
                        raise ClassificationError(
                            "cone over a singular cubic escaped the "
                            "non-normal/non-integral routing")
                    vertex = v
                    base_cubic = base
                    points.append(SingularPoint(proj, 1, SIMPLE_ELLIPTIC_CONFIG,
                                                entry.multiplicity, 3))
                    continue
                hess = _hessian_matrix(g)
                corank = 3 - rank_rational(hess)
                pattern = None
                if corank == 2:
                    pattern = _binary_cubic_root_pattern(
                        _residual_binary_cubic(g, hess))
                label = _type_from_local_data(entry.multiplicity, corank, pattern)
                points.append(SingularPoint(
                    proj, 1, label, entry.multiplicity, corank,
                    ",".join(map(str, pattern)) if pattern else None))
            else:
                # canonical chart: all earlier projective coordinates vanish
                earlier = entry.coords[:chart]
                if any(c for c in earlier):
                    continue
                corank = _orbit_corank(f, entry, chart)
                if corank == 3:
                    raise ClassificationError(
                        "a whole Galois orbit of cone points cannot occur")
                label = _type_from_local_data(entry.point_multiplicity,
                                              corank, None)
                points.append(SingularPoint(None, entry.degree, label,
                                            entry.point_multiplicity, corank))
                notes.append(
                    f"Galois orbit of degree {entry.degree} labelled {label} "
                    "from Tjurina number and Hessian corank")

    if vertex is not None:
        if len(points) != 1:
            raise ClassificationError(
                "a cone vertex must be the only singular point")
        return SurfaceReport(SIMPLE_ELLIPTIC, SIMPLE_ELLIPTIC_CONFIG,
                             tuple(points), None, tuple(notes), vertex,
                             base_cubic)

    components: list[tuple[str, int]] = []
    for p in points:
        series, rank = p.type_label[0], int(p.type_label[1:])
        components.extend([(series, rank)] * p.orbit_degree)
    config = rootmod.format_config(components)
    if not allowed_config_validate(config):
        raise ClassificationError(
            f"configuration {config} is outside the allowed list")
    if rootmod.normalize_config(config) in _TABLE_ONLY:
        notes.append("configuration A1+A4 appears in the orbit-count table "
                     "but not in the printed configuration list")
    sum_tjurina = sum(p.tjurina * p.orbit_degree for p in points)
    sat = saturation(jac, irrelevant_ideal(4))
    if zero_scheme_degree(sat) != sum_tjurina:
        raise ClassificationError(
            "Tjurina numbers do not add up to the singular scheme degree")
    fam = rootmod.family_counts(config)
    points.sort(key=lambda s: (s.point is None, s.point or (), s.type_label))
    return SurfaceReport(ADE, config, tuple(points), fam, tuple(notes))
