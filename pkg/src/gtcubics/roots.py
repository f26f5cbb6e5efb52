"""The E6 root system inside the rank-7 Picard lattice and its orbit data.

Vectors live in Z^7 with coordinates (h, e1, ..., e6) and intersection form
diag(+1, -1, -1, -1, -1, -1, -1).  The canonical class is
K = -3h + e1 + ... + e6; the 72 roots are the vectors a with a.a = -2 and
a.K = 0.  Reflections s_b(a) = a + (a.b) b generate the Weyl group.

A singularity configuration label such as ``2A1+A3`` picks a sub-root-system
basis; the W(R0)-orbit decomposition of the 72 roots yields the counts of
inequivalent linear determinantal representations (the 21-row table) and the
aCM / non-CM family counts of the twisted-cubic Hilbert scheme.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .linalg import solve_linear

Root = tuple[int, ...]

K_CLASS: Root = (-3, 1, 1, 1, 1, 1, 1)

#: the 21 configuration rows: label, classical type numeral, orbit count
TABLE1_ROWS: tuple[tuple[str, str, int], ...] = (
    ("∅", "I", 72),
    ("A1", "II", 50),
    ("2A1", "IV", 34),
    ("A2", "III", 30),
    ("3A1", "VIII", 22),
    ("A1+A2", "VI", 20),
    ("A3", "V", 16),
    ("4A1", "XVI", 13),
    ("2A1+A2", "XIII", 12),
    ("A1+A3", "X", 10),
    ("2A2", "IX", 12),
    ("A4", "VII", 8),
    ("D4", "XII", 6),
    ("2A1+A3", "XVIII", 5),
    ("A1+2A2", "XVII", 6),
    ("A1+A4", "XIV", 4),
    ("A5", "XI", 4),
    ("D5", "XV", 2),
    ("A1+A5", "XIX", 1),
    ("3A2", "XXI", 2),
    ("E6", "XX", 0),
)

#: configurations of rational double points listed for cubic surfaces,
#: excluding the smooth case; A1+A4 appears only in the orbit-count table
ALLOWED_ADE_CONFIGS: tuple[str, ...] = (
    "A1", "2A1", "A2", "3A1", "A1+A2", "A3", "4A1", "2A1+A2", "A1+A3",
    "2A2", "A4", "D4", "2A1+A3", "A1+2A2", "A5", "D5", "A1+A5", "3A2", "E6",
)


def dot(a: Root, b: Root) -> int:
    """Intersection product with signature (+1, -1^6)."""
    return a[0] * b[0] - sum(a[i] * b[i] for i in range(1, 7))


def reflect(a: Root, b: Root) -> Root:
    """Reflection of ``a`` in the root ``b`` (b.b = -2)."""
    c = dot(a, b)
    return tuple(a[i] + c * b[i] for i in range(7))


def generate_roots() -> tuple[Root, ...]:
    """The 72 roots, lexicographically sorted (deterministic)."""
    roots: set[Root] = set()
    for i, j in combinations(range(1, 7), 2):
        v = [0] * 7
        v[i], v[j] = 1, -1
        roots.add(tuple(v))
        roots.add(tuple(-x for x in v))
    for i, j, k in combinations(range(1, 7), 3):
        v = [1, 0, 0, 0, 0, 0, 0]
        v[i] = v[j] = v[k] = -1
        roots.add(tuple(v))
        roots.add(tuple(-x for x in v))
    top = (2, -1, -1, -1, -1, -1, -1)
    roots.add(top)
    roots.add(tuple(-x for x in top))
    out = tuple(sorted(roots))
    assert len(out) == 72
    return out


ROOTS: tuple[Root, ...] = generate_roots()
ROOT_INDEX: dict[Root, int] = {r: i for i, r in enumerate(ROOTS)}


class ConfigError(ValueError):
    """Unknown or malformed configuration label."""


_COMPONENT_RE = re.compile(r"^(\d*)([ADE])(\d+)$")

# Dynkin ranges that can occur inside E6
_COMPONENT_RANGES = {"A": range(1, 6), "D": range(4, 6), "E": range(6, 7)}


def parse_config(label: str) -> list[tuple[str, int]]:
    """Parse a label like ``2A1+A3`` into components [('A',1),('A',1),('A',3)].

    The empty configuration is written ``∅`` (also accepted: "", "0",
    "empty").  Components are returned sorted.
    """
    text = label.strip()
    if text in ("∅", "", "0", "empty"):
        return []
    comps: list[tuple[str, int]] = []
    for part in text.split("+"):
        m = _COMPONENT_RE.match(part.strip())
        if not m:
            raise ConfigError(f"bad configuration component {part!r}")
        count = int(m.group(1)) if m.group(1) else 1
        series, rank = m.group(2), int(m.group(3))
        if rank not in _COMPONENT_RANGES[series]:
            raise ConfigError(f"component {series}{rank} does not embed in E6")
        comps.extend([(series, rank)] * count)
    comps.sort()
    if sum(rank for _, rank in comps) > 6:
        raise ConfigError(f"total rank of {label!r} exceeds 6")
    return comps


def format_config(components: list[tuple[str, int]]) -> str:
    """Canonical label: sorted components with multiplicity prefixes."""
    if not components:
        return "∅"
    comps = sorted(components)
    parts = []
    i = 0
    while i < len(comps):
        j = i
        while j < len(comps) and comps[j] == comps[i]:
            j += 1
        series, rank = comps[i]
        mult = j - i
        parts.append(f"{mult if mult > 1 else ''}{series}{rank}")
        i = j
    return "+".join(parts)


def normalize_config(label: str) -> str:
    return format_config(parse_config(label))


def _component_adjacency(series: str, rank: int) -> list[tuple[int, int]]:
    """Edges of the Dynkin diagram on nodes 0..rank-1."""
    if series == "A":
        return [(i, i + 1) for i in range(rank - 1)]
    if series == "D":
        return [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
    if series == "E" and rank == 6:
        return [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]
    raise ConfigError(f"unsupported component {series}{rank}")


def _target_gram(components: list[tuple[str, int]]) -> list[list[int]]:
    """Expected pairwise intersections of a simple-root basis.

    Diagonal -2; adjacent nodes meet in 1 (exceptional curves), others 0.
    """
    total = sum(rank for _, rank in components)
    gram = [[0] * total for _ in range(total)]
    offset = 0
    for series, rank in components:
        for i in range(rank):
            gram[offset + i][offset + i] = -2
        for i, j in _component_adjacency(series, rank):
            gram[offset + i][offset + j] = 1
            gram[offset + j][offset + i] = 1
        offset += rank
    return gram


@dataclass(frozen=True)
class SubsystemEmbedding:
    """A root basis in E6 realising a configuration label."""

    label: str
    basis: tuple[Root, ...]

    def gram(self) -> list[list[int]]:
        return [[dot(a, b) for b in self.basis] for a in self.basis]

    def cartan_matrix(self) -> list[list[int]]:
        """Cartan matrix in the simple-root normalisation (2 on the diagonal)."""
        return [[2 if i == j else -dot(a, b)
                 for j, b in enumerate(self.basis)]
                for i, a in enumerate(self.basis)]


def _embedding_search(gram: list[list[int]], limit: int) -> list[tuple[Root, ...]]:
    """Backtracking search for root tuples matching the target Gram matrix.

    Candidates are scanned in the fixed lexicographic root order, so the
    first result is deterministic.
    """
    m = len(gram)
    found: list[tuple[Root, ...]] = []
    chosen: list[Root] = []

    def extend() -> bool:
        if len(chosen) == m:
            found.append(tuple(chosen))
            return len(found) >= limit
        k = len(chosen)
        for r in ROOTS:
            if all(dot(r, chosen[i]) == gram[k][i] for i in range(k)):
                chosen.append(r)
                if extend():
                    return True
                chosen.pop()
        return False

    extend()
    return found


def embed_subsystem(label: str, limit: int = 1) -> SubsystemEmbedding | list[SubsystemEmbedding]:
    """Find a root basis for a configuration label (or several, limit > 1)."""
    comps = parse_config(label)
    canonical = format_config(comps)
    if not comps:
        result = [SubsystemEmbedding(canonical, ())]
    else:
        gram = _target_gram(comps)
        tuples = _embedding_search(gram, limit)
        if not tuples:
            raise ConfigError(f"no embedding found for {label!r} "
                              "(all table labels embed; this is a bug)")
        result = [SubsystemEmbedding(canonical, t) for t in tuples]
    return result if limit > 1 else result[0]


@dataclass(frozen=True)
class Orbit:
    """A W(R0)-orbit on the 72 roots with its extremal elements."""

    roots: tuple[Root, ...]
    effective: bool
    minimal: Root
    maximal: Root

    @property
    def size(self) -> int:
        return len(self.roots)


@dataclass(frozen=True)
class OrbitDecomposition:
    embedding: SubsystemEmbedding
    orbits: tuple[Orbit, ...]

    def effective_orbits(self) -> tuple[Orbit, ...]:
        return tuple(o for o in self.orbits if o.effective)

    def noneffective_orbits(self) -> tuple[Orbit, ...]:
        return tuple(o for o in self.orbits if not o.effective)

    def sizes(self) -> list[int]:
        return sorted(o.size for o in self.orbits)


def _in_span(root: Root, basis: tuple[Root, ...]) -> bool:
    """Membership of a root in the sublattice Z-spanned by the basis.

    R0 consists of the roots lying in the integral span (norm -2 vectors of
    an ADE root lattice are exactly its roots); the rational span would be
    too big, e.g. a rank-6 configuration rationally spans everything.
    """
    if not basis:
        return False
    cols = [[Fraction(b[i]) for b in basis] for i in range(7)]
    sol = solve_linear(cols, [Fraction(v) for v in root])
    if sol is None:
        return False
    return all(c.denominator == 1 for c in sol)


def weyl_orbits(emb: SubsystemEmbedding) -> OrbitDecomposition:
    """Orbit decomposition of the 72 roots under W(R0)."""
    reflections = [tuple(ROOT_INDEX[reflect(r, b)] for r in ROOTS)
                   for b in emb.basis]
    seen = [False] * len(ROOTS)
    orbits: list[Orbit] = []
    for start in range(len(ROOTS)):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        members = []
        while stack:
            idx = stack.pop()
            members.append(idx)
            for perm in reflections:
                nxt = perm[idx]
                if not seen[nxt]:
                    seen[nxt] = True
                    stack.append(nxt)
        members.sort()
        roots = tuple(ROOTS[i] for i in members)
        effective = all(_in_span(r, emb.basis) for r in roots)
        minimal, maximal = extremal_roots(roots, emb)
        orbits.append(Orbit(roots, effective, minimal, maximal))
    return OrbitDecomposition(emb, tuple(orbits))


def extremal_roots(orbit_roots: tuple[Root, ...],
                   emb: SubsystemEmbedding) -> tuple[Root, Root]:
    """The unique minimal and maximal roots of an orbit.

    maximal a+: a+ . b <= 0 for every basis root b;
    minimal a-: a- . b >= 0 for every basis root b.
    """
    maxima = [r for r in orbit_roots
              if all(dot(r, b) <= 0 for b in emb.basis)]
    minima = [r for r in orbit_roots
              if all(dot(r, b) >= 0 for b in emb.basis)]
    if len(maxima) != 1 or len(minima) != 1:
        raise RuntimeError(
            f"extremal roots of an orbit must be unique, got {len(minima)} "
            f"minima and {len(maxima)} maxima for {emb.label}")
    return minima[0], maxima[0]


def table1() -> list[tuple[str, str, int]]:
    """Recompute all 21 rows: label, type numeral, orbit count on R \\ R0."""
    out = []
    for label, roman, _ in TABLE1_ROWS:
        emb = embed_subsystem(label)
        dec = weyl_orbits(emb)
        out.append((label, roman, len(dec.noneffective_orbits())))
    return out


def table1_expected() -> dict[str, int]:
    return {label: count for label, _, count in TABLE1_ROWS}


def family_counts(label: str) -> tuple[int, int]:
    """(aCM families, non-CM families) for a configuration label.

    aCM families are the orbits outside R0 (the determinantal count);
    non-CM families are the effective orbits, one per singular point.
    """
    emb = embed_subsystem(label)
    dec = weyl_orbits(emb)
    return len(dec.noneffective_orbits()), len(dec.effective_orbits())


def weyl_group_order(emb: SubsystemEmbedding) -> int:
    """Order of W(R0) as a permutation group on the roots (BFS closure)."""
    if not emb.basis:
        return 1
    gens = [tuple(ROOT_INDEX[reflect(r, b)] for r in ROOTS) for b in emb.basis]
    identity = tuple(range(len(ROOTS)))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[i] for i in g)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen)
