"""Acceptance suites: one callable per criterion, shared by CLI and tests.

Each criterion function returns a ``CriterionResult``; ``run_all`` executes
them in order, collecting every Gröbner basis computed by suites 1-6 so the
engine self-check (criterion 8) can re-verify the Buchberger criterion on
all of them.  Criterion 9 is a documented exclusion, never a failure: the
topological data of the ambient symplectic eightfold (Euler number 25650)
is out of scope for this toolkit.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import roots as rootmod
from .curves import (NON_CM_H_CLOSED, NON_CM_H_GENERIC, NON_CM_QUADRICS,
                     _curve_from_generators, minors_ideal, normal_forms)
from .groebner import (GREVLEX, Ideal, audit_bases, buchberger_criterion_holds,
                       hilbert_function_bruteforce, hilbert_polynomial)
from .linalg import det_rational, rank_rational
from .matrices import LinearMatrix, mat_det, mat_equal, mat_scale_left, parse_linear_matrix
from .poly import MultiPoly, parse_poly
from .stability import (SEMISTABLE_NOT_STABLE, STABLE, UNSTABLE, koszul_matrix,
                        semistable_3x2, skew_normalize, stability_3x3)
from .surface import classify, has_linear_factor, nonnormal_slice_classify, verify_detrep

DEFAULT_SEED = 271828

THREE_A2_MATRIX = "0,-z3,z0; z1,0,-z3; -z3,z2,0"
THREE_A2_MATRIX_SECOND = "0,-z3,z0; z2,0,-z3; -z3,z1,0"
THREE_A2_SURFACE = "z0*z1*z2 - z3^3"
FOUR_A1_MATRIX = "0, z0+z3, z0; z1+z2, 0, z1; z2, z3, 0"
FOUR_A1_SURFACE = "z1*z2*z3 + z0*z2*z3 + z0*z1*z3 + z0*z1*z2"

EXCLUDED_NOTE = ("euler number 25650 of the symplectic eightfold and the "
                 "related identity e(HilbGTC) = 3*(e + 81): out of scope, "
                 "recorded as documentation only")


@dataclass
class CriterionResult:
    number: int
    name: str
    status: str  # "pass" | "fail" | "excluded"
    detail: str
    elapsed: float

    @property
    def ok(self) -> bool:
        return self.status != "fail"


def _result(number: int, name: str, failures: list[str], t0: float,
            extra: str = "") -> CriterionResult:
    elapsed = time.time() - t0
    if failures:
        return CriterionResult(number, name, "fail", "; ".join(failures), elapsed)
    return CriterionResult(number, name, "pass", extra or "all checks exact",
                           elapsed)


def criterion_1_table1() -> CriterionResult:
    t0 = time.time()
    failures = []
    expected = rootmod.table1_expected()
    for label, _, count in rootmod.table1():
        if count != expected[label]:
            failures.append(f"{label}: computed {count}, expected {expected[label]}")
    return _result(1, "orbit-count table (21 rows)", failures, t0,
                   "all 21 rows reproduced exactly")


def criterion_2_4a1_orbits() -> CriterionResult:
    t0 = time.time()
    failures = []
    dec = rootmod.weyl_orbits(rootmod.embed_subsystem("4A1"))
    sizes = sorted(o.size for o in dec.orbits)
    by_size: dict[int, int] = {}
    for o in dec.orbits:
        by_size[o.size] = by_size.get(o.size, 0) + 1
    eff = [o for o in dec.orbits if o.effective]
    if by_size.get(16, 0) != 1:
        failures.append(f"expected one orbit of size 16, got {by_size.get(16, 0)}")
    if by_size.get(4, 0) != 12:
        failures.append(f"expected 12 orbits of size 4, got {by_size.get(4, 0)}")
    if len(eff) != 4 or any(o.size != 2 for o in eff):
        failures.append("expected 4 effective orbits of size 2")
    if sum(sizes) != 72:
        failures.append(f"orbit sizes sum to {sum(sizes)}, not 72")
    return _result(2, "4A1 orbit profile", failures, t0,
                   "1x16 + 12x4 + 4 effective x2, total 72")


def criterion_3_worked_examples() -> CriterionResult:
    t0 = time.time()
    failures = []
    f3 = parse_poly(THREE_A2_SURFACE)
    f4 = parse_poly(FOUR_A1_SURFACE)
    cases = [(parse_linear_matrix(THREE_A2_MATRIX), f3, "first 3A2"),
             (parse_linear_matrix(THREE_A2_MATRIX_SECOND), f3, "second 3A2"),
             (parse_linear_matrix(FOUR_A1_MATRIX), f4, "4A1")]
    for mat, f, name in cases:
        ok, scalar = verify_detrep(mat, f)
        if not ok or scalar != 1:
            failures.append(f"{name}: determinant does not equal the cubic "
                            f"(scalar {scalar})")
        if not stability_3x3(mat).is_stable():
            failures.append(f"{name}: matrix is not stable")
    rep3 = classify(f3)
    pts3 = {tuple(map(str, s.point)) for s in rep3.singularities}
    want3 = {("1", "0", "0", "0"), ("0", "1", "0", "0"), ("0", "0", "1", "0")}
    if rep3.configuration != "3A2" or pts3 != want3:
        failures.append(f"3A2 classification wrong: {rep3.configuration}, {pts3}")
    if rep3.families != (2, 3):
        failures.append(f"3A2 family counts {rep3.families}, expected (2, 3)")
    rep4 = classify(f4)
    pts4 = {tuple(map(str, s.point)) for s in rep4.singularities}
    want4 = {("1", "0", "0", "0"), ("0", "1", "0", "0"),
             ("0", "0", "1", "0"), ("0", "0", "0", "1")}
    if rep4.configuration != "4A1" or pts4 != want4:
        failures.append(f"4A1 classification wrong: {rep4.configuration}, {pts4}")
    if rep4.families != (13, 4):
        failures.append(f"4A1 family counts {rep4.families}, expected (13, 4)")
    return _result(3, "worked determinantal examples", failures, t0,
                   "both 3A2 matrices and the 4A1 matrix verified, "
                   "classifications and family counts exact")


def criterion_4_normal_forms() -> CriterionResult:
    t0 = time.time()
    failures = []
    for nf in normal_forms():
        verdict = semistable_3x2(nf.matrix)
        if not verdict.is_stable():
            failures.append(f"{nf.name} not stable ({verdict.pattern})")
            continue
        curve = minors_ideal(nf.matrix, verdict)
        if curve.hilbert.format() != "3n+1":
            failures.append(f"{nf.name}: Hilbert polynomial {curve.hilbert.format()}")
        if not curve.acm:
            failures.append(f"{nf.name}: minors curve not aCM")
    quadrics = [parse_poly(t) for t in NON_CM_QUADRICS]
    for htxt in (NON_CM_H_CLOSED, NON_CM_H_GENERIC):
        curve = _curve_from_generators(quadrics + [parse_poly(htxt)])
        if curve.hilbert.format() != "3n+1":
            failures.append(f"non-CM h={htxt}: HP {curve.hilbert.format()}")
        if curve.acm:
            failures.append(f"non-CM h={htxt}: reported aCM")
    return _result(4, "normal-form suite (8 aCM + 2 non-CM)", failures, t0)


def criterion_5_classification() -> CriterionResult:
    t0 = time.time()
    failures = []

    def expect(poly_text: str, cls: str) -> None:
        rep = classify(parse_poly(poly_text))
        if rep.surface_class != cls:
            failures.append(f"{poly_text}: {rep.surface_class}, expected {cls}")

    expect("x0^3 + x1^3 + x2^3 + x3^3", "smooth")
    expect("x1^3 + x2^3 + x3^3", "simple-elliptic")
    expect("x1^3 + x2^3 + x3^3 - 6*x1*x2*x3", "simple-elliptic")
    expect("x1^3 + x2^3 + x3^3 - 3*x1*x2*x3", "non-integral")
    expect("t0^2*t2 + t1^2*t3", "non-normal")
    expect("t0*t1*t2 + t0^2*t3 + t1^3", "non-normal")
    expect("t1^3 + t2^3 + t1*t2*t3", "non-normal")
    expect("t1^3 + t2^2*t3", "non-normal")
    slice_cases = [((0, 0, 0), "X9"), ((1, 0, 0), "X8"),
                   ((-1, 1, 1), "X7"), ((1, 1, 1), "X6")]
    for (a, b, c), want in slice_cases:
        got = nonnormal_slice_classify(a, b, c)
        if got != want:
            failures.append(f"slice ({a},{b},{c}): {got}, expected {want}")
    return _result(5, "classification suite", failures, t0)


def _random_linear_matrix(rng: random.Random, nvars: int = 4) -> LinearMatrix:
    rows = []
    for _ in range(3):
        row = []
        for _ in range(3):
            terms = {}
            for v in range(nvars):
                c = rng.randint(-3, 3)
                if c:
                    e = tuple(1 if k == v else 0 for k in range(nvars))
                    terms[e] = Fraction(c)
            row.append(MultiPoly(nvars, terms))
        rows.append(row)
    return LinearMatrix(rows, nvars)


def _random_skew_stable(rng: random.Random) -> LinearMatrix:
    while True:
        g = [[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
        if det_rational(g) != 0:
            break
    while True:
        coeffs = [[rng.randint(-2, 2) for _ in range(4)] for _ in range(3)]
        if rank_rational([[Fraction(c) for c in r] for r in coeffs]) == 3:
            break
    forms = [MultiPoly(4, {tuple(1 if k == i else 0 for k in range(4)): Fraction(c)
                           for i, c in enumerate(row) if c})
             for row in coeffs]
    lam = Fraction(rng.choice([1, 1, 2, 3, -1, -2]))
    scaled = [[e.scale(lam) for e in row] for row in koszul_matrix(forms)]
    return LinearMatrix(mat_scale_left(g, scaled))


def criterion_6_random_stability(seed: int = DEFAULT_SEED) -> CriterionResult:
    t0 = time.time()
    failures = []
    rng = random.Random(seed)
    counts = {STABLE: 0, SEMISTABLE_NOT_STABLE: 0, UNSTABLE: 0}
    for i in range(100):
        a = _random_linear_matrix(rng)
        d = mat_det(a.entries)
        verdict = stability_3x3(a)
        counts[verdict.level] += 1
        if not d.is_zero():
            if verdict.level == UNSTABLE:
                failures.append(f"sample {i}: nonzero det but unstable")
            if not has_linear_factor(d) and not verdict.is_stable():
                failures.append(f"sample {i}: irreducible det but {verdict.level}")
        if verdict.level == SEMISTABLE_NOT_STABLE:
            if d.is_zero() or not has_linear_factor(d):
                failures.append(f"sample {i}: strictly semistable but det is "
                                "zero or irreducible")
    roundtrips = 0
    for i in range(25):
        a = _random_skew_stable(rng)
        nf = skew_normalize(a)
        rebuilt = mat_scale_left([list(r) for r in nf.transform],
                                 koszul_matrix(list(nf.forms)))
        if not mat_equal(rebuilt, a.entries):
            failures.append(f"skew sample {i}: A != M K(u)")
        else:
            roundtrips += 1
    extra = (f"levels {counts}; {roundtrips}/25 skew round trips exact")
    return _result(6, "randomized det-criterion and skew round trips",
                   failures, t0, extra)


def criterion_7_weyl_order() -> CriterionResult:
    t0 = time.time()
    failures = []
    order = rootmod.weyl_group_order(rootmod.embed_subsystem("E6"))
    if order != 51840:
        failures.append(f"W(E6) order {order}, expected 51840")
    return _result(7, "Weyl group order by permutation closure", failures, t0,
                   "order 51840")


def _random_homogeneous_ideal(rng: random.Random) -> Ideal:
    gens = []
    for _ in range(rng.randint(2, 4)):
        deg = rng.randint(1, 3)
        from .groebner import monomials_of_degree
        terms = {}
        for e in monomials_of_degree(4, deg):
            c = rng.randint(-2, 2)
            if c and rng.random() < 0.5:
                terms[e] = Fraction(c)
        if terms:
            gens.append(MultiPoly(4, terms))
    if not gens:
        gens = [MultiPoly.variable(4, 0)]
    return Ideal(gens, 4)


def criterion_8_groebner_selfchecks(recorded_bases, seed: int = DEFAULT_SEED) -> CriterionResult:
    t0 = time.time()
    failures = []
    checked = 0
    for gens, order, basis in recorded_bases:
        if len(basis) < 2:
            continue
        if not buchberger_criterion_holds(list(basis), order):
            failures.append("an S-polynomial of a recorded basis does not "
                            f"reduce to zero (size {len(basis)})")
        checked += 1
    rng = random.Random(seed + 1)
    for i in range(20):
        ideal = _random_homogeneous_ideal(rng)
        hp = hilbert_polynomial(ideal)
        for d in range(hp.bound, hp.bound + 4):
            want = hilbert_function_bruteforce(ideal, d)
            got = hp(d)
            if got != want:
                failures.append(f"sample ideal {i}: HP({d}) = {got}, "
                                f"brute force {want}")
                break
    return _result(8, "Gröbner engine self-checks", failures, t0,
                   f"{checked} recorded bases pass the Buchberger criterion; "
                   "20 Hilbert-function comparisons exact")


def criterion_9_exclusions() -> CriterionResult:
    return CriterionResult(9, "documented exclusions", "excluded",
                           EXCLUDED_NOTE, 0.0)


def run_all(seed: int = DEFAULT_SEED) -> list[CriterionResult]:
    results = []
    with audit_bases() as recorded:
        results.append(criterion_1_table1())
        results.append(criterion_2_4a1_orbits())
        results.append(criterion_3_worked_examples())
        results.append(criterion_4_normal_forms())
        results.append(criterion_5_classification())
        results.append(criterion_6_random_stability(seed))
    results.append(criterion_7_weyl_order())
    results.append(criterion_8_groebner_selfchecks(recorded, seed))
    results.append(criterion_9_exclusions())
    return results
