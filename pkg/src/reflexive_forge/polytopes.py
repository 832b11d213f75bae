"""Exact lattice polytopes: hulls, lattice points and reflexivity predicates.

Facets are stored as ``normal . x <= rhs`` with a primitive integer normal
and a rational right-hand side.  Hulls come from a double description run
on the homogenized cone over the input points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence

from .complexes import SimplicialComplex, incidence_columns
from .exactmath import (
    IntVec,
    determinant,
    dot,
    lattice_span_is_full,
    primitive,
    rank,
    solve_rational,
    vec_gcd,
)


class PolytopeError(ValueError):
    pass


class NotFullDimensional(PolytopeError):
    pass


class NotFano(PolytopeError):
    pass


class OriginNotInterior(PolytopeError):
    pass


class OriginOnFacet(PolytopeError):
    pass


@dataclass(frozen=True)
class Facet:
    normal: IntVec
    rhs: Fraction

    def value(self, x: Sequence) -> Fraction:
        return dot(self.normal, x)

    def contains(self, x: Sequence) -> bool:
        return dot(self.normal, x) == self.rhs

    def scaled_to_one(self) -> tuple[Fraction, ...]:
        if self.rhs == 0:
            raise OriginOnFacet("facet passes through the origin")
        return tuple(Fraction(a) / self.rhs for a in self.normal)

    @property
    def integral_at_one(self) -> bool:
        """True iff the hyperplane reads ``a.z = 1`` with ``a`` integral."""
        return self.rhs != 0 and all(x.denominator == 1 for x in self.scaled_to_one())

    def to_json(self) -> dict:
        return {"normal": list(self.normal), "rhs": _fmt_rat(self.rhs),
                "integral_at_one": self.integral_at_one}


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class HPolytope:
    d: int
    facets: tuple[Facet, ...]

    def contains(self, x: Sequence) -> bool:
        return all(f.value(x) <= f.rhs for f in self.facets)

    def interior_contains(self, x: Sequence) -> bool:
        return all(f.value(x) < f.rhs for f in self.facets)

    def vertices_by_enumeration(self) -> list[tuple[Fraction, ...]]:
        """Vertices found by solving every d-subset of facet equations.

        Independent of the double description code; used as a cross-check.
        """
        found = set()
        for combo in combinations(self.facets, self.d):
            sol = solve_rational([f.normal for f in combo], [f.rhs for f in combo])
            if sol is not None and self.contains(sol):
                found.add(sol)
        return sorted(found)


@dataclass(frozen=True)
class VPolytope:
    d: int
    points: tuple[tuple, ...]
    vertices: tuple[tuple, ...]
    facets: tuple[Facet, ...] = field(repr=False)

    @classmethod
    def from_points(cls, points: Iterable[Sequence]) -> VPolytope:
        pts = _dedupe(points)
        h, verts = hull(pts)
        return cls(h.d, tuple(pts), tuple(verts), h.facets)

    @cached_property
    def h(self) -> HPolytope:
        return HPolytope(self.d, self.facets)

    @property
    def is_integral(self) -> bool:
        return all(isinstance(x, int) or Fraction(x).denominator == 1
                   for v in self.vertices for x in v)

    def facet_vertices(self, f: Facet) -> list[tuple]:
        return [v for v in self.vertices if f.contains(v)]

    def vertex_set(self) -> frozenset:
        return frozenset(tuple(Fraction(x) for x in v) for v in self.vertices)

    def to_json(self) -> dict:
        return {"d": self.d, "points": [[_fmt_num(x) for x in v] for v in self.vertices]}


def _fmt_num(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else _fmt_rat(x)


def _dedupe(points: Iterable[Sequence]) -> list[tuple]:
    seen = set()
    out = []
    for p in points:
        t = tuple(int(x) if Fraction(x).denominator == 1 else Fraction(x) for x in p)
        key = tuple(Fraction(x) for x in t)
        if key not in seen:
            seen.add(key)
            out.append(t)
    return out


# hull -----------------------------------------------------------------------

def _homogenize(p: Sequence) -> IntVec:
    den = lcm(*(Fraction(x).denominator for x in p)) if p else 1
    return tuple(int(Fraction(x) * den) for x in p) + (den,)


def _cone_facets(gens: list[IntVec]) -> list[tuple[IntVec, int]]:
    """Extreme rays of the dual cone {a : g.a >= 0 for every generator g}.

    Returns ``(ray, zero_mask)`` pairs; bit ``i`` of ``zero_mask`` is set when
    ``gens[i] . ray == 0``.  Requires the generators to span the space.
    """
    n = len(gens[0])
    basis: list[int] = []
    for i in range(len(gens)):
        if rank([gens[j] for j in basis + [i]]) == len(basis) + 1:
            basis.append(i)
            if len(basis) == n:
                break
    rays: list[tuple[IntVec, int]] = []
    mat = [gens[i] for i in basis]
    for k in range(n):
        unit = [int(j == k) for j in range(n)]
        sol = solve_rational(mat, unit)
        den = lcm(*(x.denominator for x in sol))
        a = primitive(tuple(int(x * den) for x in sol))
        zero = 0
        for j, i in enumerate(basis):
            if j != k:
                zero |= 1 << i
        rays.append((a, zero))
    in_basis = set(basis)
    for i, g in enumerate(gens):
        if i in in_basis:
            continue
        bit = 1 << i
        vals = [dot(g, a) for a, _ in rays]
        pos = [k for k, s in enumerate(vals) if s > 0]
        neg = [k for k, s in enumerate(vals) if s < 0]
        if not neg:
            rays = [(a, z | bit) if vals[k] == 0 else (a, z) for k, (a, z) in enumerate(rays)]
            continue
        new_rays = []
        for p in pos:
            for q in neg:
                common = rays[p][1] & rays[q][1]
                if bin(common).count("1") < n - 2:
                    continue
                if any(k != p and k != q and (rays[k][1] & common) == common
                       for k in range(len(rays))):
                    continue
                sp, sq = vals[p], vals[q]
                a = primitive(tuple(sp * y - sq * x for x, y in zip(rays[p][0], rays[q][0])))
                new_rays.append((a, common | bit))
        kept = [(a, z | bit) if vals[k] == 0 else (a, z)
                for k, (a, z) in enumerate(rays) if vals[k] >= 0]
        rays = kept + new_rays
    return rays


def hull(points: Sequence[Sequence]) -> tuple[HPolytope, list[tuple]]:
    """Irredundant facet description and vertex list of conv(points)."""
    pts = _dedupe(points)
    if not pts:
        raise NotFullDimensional("no points")
    d = len(pts[0])
    gens = [_homogenize(p) for p in pts]
    if rank(gens) < d + 1:
        raise NotFullDimensional(f"points span an affine space of dimension < {d}")
    facets = []
    for a, _ in _cone_facets(gens):
        alpha, beta = a[:-1], a[-1]
        g = vec_gcd(alpha)
        if g == 0:
            continue
        facets.append(Facet(tuple(-x // g for x in alpha), Fraction(beta, g)))
    facets.sort(key=lambda f: (f.normal, f.rhs))
    verts = [p for p in pts if rank([f.normal for f in facets if f.contains(p)]) == d]
    return HPolytope(d, tuple(facets)), verts


# lattice points and predicates -------------------------------------------------

def bounding_box(vertices: Sequence[Sequence]) -> list[tuple[int, int]]:
    d = len(vertices[0])
    box = []
    for k in range(d):
        col = [Fraction(v[k]) for v in vertices]
        lo, hi = min(col), max(col)
        box.append((-((-lo.numerator) // lo.denominator), hi.numerator // hi.denominator))
    return box


def lattice_points(p: VPolytope | HPolytope, box: Sequence[tuple[int, int]] | None = None) -> list[IntVec]:
    """All integer points of the polytope, by a pruned box scan."""
    if isinstance(p, VPolytope):
        facets = p.facets
        box = box or bounding_box(p.vertices)
    else:
        facets = p.facets
        box = box or bounding_box(p.vertices_by_enumeration())
    d = len(box)
    out: list[IntVec] = []
    # suffix_min[k][f]: least value of facet f's normal over coordinates k.. of the box
    suffix_min = [[0] * len(facets) for _ in range(d + 1)]
    for k in range(d - 1, -1, -1):
        lo, hi = box[k]
        for fi, f in enumerate(facets):
            c = f.normal[k]
            suffix_min[k][fi] = suffix_min[k + 1][fi] + min(c * lo, c * hi)

    def scan(k: int, prefix: list[int], partial: list[int]) -> None:
        if any(partial[fi] + suffix_min[k][fi] > f.rhs for fi, f in enumerate(facets)):
            return
        if k == d:
            out.append(tuple(prefix))
            return
        lo, hi = box[k]
        for x in range(lo, hi + 1):
            prefix.append(x)
            scan(k + 1, prefix, [partial[fi] + f.normal[k] * x for fi, f in enumerate(facets)])
            prefix.pop()

    if all(lo <= hi for lo, hi in box):
        scan(0, [], [0] * len(facets))
    return out


def interior_lattice_points(p: VPolytope) -> list[IntVec]:
    return [x for x in lattice_points(p) if p.h.interior_contains(x)]


def boundary_lattice_points(p: VPolytope) -> list[IntVec]:
    return [x for x in lattice_points(p) if not p.h.interior_contains(x)]


def is_fano(p: VPolytope) -> bool:
    """Integral, full-dimensional, and the origin is the only interior lattice point."""
    if not p.is_integral:
        return False
    origin = (0,) * p.d
    if not p.h.interior_contains(origin):
        return False
    return interior_lattice_points(p) == [origin]


def _require_fano(p: VPolytope) -> None:
    if not is_fano(p):
        raise NotFano("polytope is not Fano")


@dataclass(frozen=True)
class GorensteinReport:
    gorenstein: bool
    facets: tuple[dict, ...]

    def __bool__(self) -> bool:
        return self.gorenstein


def is_gorenstein_fano(p: VPolytope) -> GorensteinReport:
    """Fano polytope whose facets all read ``a.z = 1`` with integral ``a``."""
    _require_fano(p)
    rows = []
    for f in p.facets:
        scaled = f.scaled_to_one()
        rows.append({"normal": list(f.normal), "rhs": _fmt_rat(f.rhs),
                     "scaled_normal": [_fmt_rat(x) for x in scaled],
                     "integral_at_one": all(x.denominator == 1 for x in scaled)})
    return GorensteinReport(all(r["integral_at_one"] for r in rows), tuple(rows))


def is_terminal(p: VPolytope) -> bool:
    _require_fano(p)
    verts = {tuple(int(x) for x in v) for v in p.vertices}
    return set(boundary_lattice_points(p)) == verts


def is_simplicial(p: VPolytope) -> bool:
    return all(len(p.facet_vertices(f)) == p.d for f in p.facets)


def is_smooth(p: VPolytope) -> bool:
    _require_fano(p)
    if not is_simplicial(p):
        return False
    return all(abs(determinant(p.facet_vertices(f))) == 1 for f in p.facets)


def facet_width(p: VPolytope, f: Facet) -> int:
    vals = [f.value(v) for v in p.vertices]
    return max(vals) - min(vals)


def all_facet_widths_one(p: VPolytope) -> bool:
    return all(facet_width(p, f) == 1 for f in p.facets)


def dual_polytope(p: VPolytope) -> VPolytope:
    """Polar dual; its vertices are the facet normals scaled to right-hand side 1."""
    if not p.h.interior_contains((0,) * p.d):
        raise OriginNotInterior("origin is not an interior point")
    return VPolytope.from_points([f.scaled_to_one() for f in p.facets])


# triangulations and volume --------------------------------------------------

def simplex_volume(points: Sequence[Sequence]) -> int:
    """Normalized volume of a full-dimensional lattice simplex given by d+1 points."""
    return abs(determinant([tuple(p) + (1,) for p in points]))


def placing_triangulation(points: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Placing triangulation in the given point order, as index tuples.

    Points lying inside the current hull when visited are skipped.
    """
    hom = [tuple(p) + (1,) for p in points]
    d = len(points[0])
    start: list[int] = []
    for i in range(len(hom)):
        if rank([hom[j] for j in start + [i]]) == len(start) + 1:
            start.append(i)
            if len(start) == d + 1:
                break
    if len(start) < d + 1:
        raise NotFullDimensional("points are not full-dimensional")
    simplices = [tuple(start)]
    used = set(start)
    for i in range(len(points)):
        if i in used:
            continue
        # boundary ridges: d-subsets belonging to exactly one simplex
        owner: dict[tuple[int, ...], list[tuple[int, int]]] = {}
        for s in simplices:
            for k in range(d + 1):
                ridge = s[:k] + s[k + 1:]
                owner.setdefault(ridge, []).append((s[k], 0))
        new = []
        for ridge, opp in owner.items():
            if len(opp) != 1:
                continue
            q = opp[0][0]
            side_q = determinant([hom[j] for j in ridge] + [hom[q]])
            side_i = determinant([hom[j] for j in ridge] + [hom[i]])
            if side_q * side_i < 0:
                new.append(tuple(sorted(ridge + (i,))))
        if new:
            simplices.extend(new)
            used.add(i)
    return simplices


def normalized_volume(p: VPolytope, order: Sequence[int] | None = None) -> int:
    """d! times the Euclidean volume, summed over a placing triangulation."""
    verts = [tuple(int(x) for x in v) for v in p.vertices]
    if order is not None:
        verts = [verts[k] for k in order]
    tri = placing_triangulation(verts)
    return sum(simplex_volume([verts[j] for j in s]) for s in tri)


# constructions from complexes ---------------------------------------------------

def complex_polytope(cx: SimplicialComplex) -> VPolytope:
    return VPolytope.from_points(incidence_columns(cx))


def merge_polytope(cx: SimplicialComplex, cx2: SimplicialComplex) -> VPolytope:
    """conv of the face indicators of ``cx`` and the negated indicators of ``cx2``."""
    if cx.d != cx2.d:
        raise ValueError("complexes live on different vertex sets")
    pts = incidence_columns(cx) + [tuple(-x for x in c) for c in incidence_columns(cx2)]
    return VPolytope.from_points(pts)


@dataclass(frozen=True)
class FacetLatticeReport:
    z_span_full: bool
    rhs_one_integral: bool


def facet_lattice_report(p: VPolytope, f: Facet) -> FacetLatticeReport:
    if f.rhs == 0:
        raise OriginOnFacet("origin lies on the facet hyperplane")
    pts = [x for x in lattice_points(p) if f.contains(x)]
    return FacetLatticeReport(lattice_span_is_full(pts, p.d), f.integral_at_one)


OBSTRUCTION_KINDS = ("nonflag", "oddhole", "antihole")


def obstruction_rhs(kind: str, size: int) -> int:
    """Level of the hyperplane sum_{i in V} z_i = c for an obstruction on |V| = size vertices."""
    if kind == "nonflag":
        if size < 3:
            raise ValueError("a non-flag obstruction needs at least 3 vertices")
        return size - 1
    if size < 5 or size % 2 == 0:
        raise ValueError("odd hole/antihole obstructions need an odd size >= 5")
    if kind == "oddhole":
        return (size - 1) // 2
    if kind == "antihole":
        return 2
    raise ValueError(f"unknown obstruction kind {kind!r}")


@dataclass(frozen=True)
class ObstructionReport:
    certified: bool
    supporting: bool
    level: int
    contact: tuple[tuple, ...]
    facets: tuple[Facet, ...]

    def __bool__(self) -> bool:
        return self.certified

    def to_json(self) -> dict:
        return {"certified": self.certified, "supporting": self.supporting,
                "hyperplane_rhs": self.level,
                "contact": [list(v) for v in self.contact],
                "facets": [f.to_json() for f in self.facets]}


def verify_obstruction_facet(p: VPolytope, kind: str, vertices: Iterable[int]) -> ObstructionReport:
    """Check the hyperplane sum_{i in V} z_i = c against the merged polytope.

    Certified when the hyperplane supports ``p`` with nonempty contact, at
    least one facet contains the contact set, and none of those facets can be
    written as ``a.z = 1`` with integral ``a``.
    """
    vs = sorted(set(vertices))
    level = obstruction_rhs(kind, len(vs))
    normal = tuple(1 if i + 1 in vs else 0 for i in range(p.d))
    vals = [dot(normal, v) for v in p.vertices]
    supporting = max(vals) == level
    contact = tuple(v for v, x in zip(p.vertices, vals) if x == level)
    over = [f for f in p.facets if all(f.contains(v) for v in contact)] if contact else []
    certified = supporting and bool(over) and not any(f.integral_at_one for f in over)
    return ObstructionReport(certified, supporting, level, contact, tuple(over))
