"""Simplicial complexes on [d], stored as sets of face bitmasks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .graphs import Graph, bits, mask_to_set, set_to_mask, stable_set_masks


def _popcount(m: int) -> int:
    return bin(m).count("1")


@dataclass(frozen=True)
class SimplicialComplex:
    """Down-closed family of subsets of [d] containing the empty set and all singletons."""

    d: int
    faces: frozenset[int]

    def __post_init__(self):
        full = (1 << self.d) - 1
        for f in self.faces:
            if f & ~full:
                raise ValueError(f"face {sorted(mask_to_set(f))} leaves vertex range 1..{self.d}")
        if 0 not in self.faces or any((1 << i) not in self.faces for i in range(self.d)):
            raise ValueError("complex must contain the empty face and every singleton")
        for f in self.faces:
            for i in bits(f):
                if f & ~(1 << i) not in self.faces:
                    raise ValueError(f"face {sorted(mask_to_set(f))} is not down-closed")

    def __contains__(self, face: Iterable[int]) -> bool:
        return set_to_mask(face) in self.faces

    def face_sets(self) -> list[frozenset[int]]:
        return [mask_to_set(f) for f in sorted(self.faces, key=_face_key)]

    def facets(self) -> list[frozenset[int]]:
        maximal = [f for f in self.faces
                   if not any(f | (1 << i) in self.faces for i in range(self.d) if not f >> i & 1)]
        return [mask_to_set(f) for f in sorted(maximal, key=_face_key)]

    def minimal_nonfaces(self) -> list[frozenset[int]]:
        out = []
        for m in range(1 << self.d):
            if m in self.faces:
                continue
            if all(m & ~(1 << i) in self.faces for i in bits(m)):
                out.append(m)
        return [mask_to_set(m) for m in sorted(out, key=lambda m: (_popcount(m), _support(m)))]

    def to_json(self) -> dict:
        return {"d": self.d, "facets": [sorted(f) for f in self.facets()]}


def _support(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in bits(mask))


def _face_key(mask: int):
    # cardinality descending, then lexicographic on the sorted support, empty face last
    return (-_popcount(mask), _support(mask))


def from_facets(d: int, facets: Iterable[Iterable[int]]) -> SimplicialComplex:
    faces = {0} | {1 << i for i in range(d)}
    for facet in facets:
        vs = list(facet)
        for v in vs:
            if not 1 <= v <= d:
                raise ValueError(f"vertex {v} outside 1..{d}")
        top = set_to_mask(vs)
        sub = top
        while True:
            faces.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & top
    return SimplicialComplex(d, frozenset(faces))


def full_simplex(d: int) -> SimplicialComplex:
    return SimplicialComplex(d, frozenset(range(1 << d)))


def boundary_of_simplex(e: int) -> SimplicialComplex:
    return from_facets(e, [[j for j in range(1, e + 1) if j != i] for i in range(1, e + 1)])


def stable_set_complex(g: Graph) -> SimplicialComplex:
    return SimplicialComplex(g.d, frozenset(stable_set_masks(g)))


def is_flag(cx: SimplicialComplex) -> Graph | None:
    """The graph G with cx = S(G) when every minimal nonface is an edge, else None."""
    nonfaces = cx.minimal_nonfaces()
    if any(len(f) != 2 for f in nonfaces):
        return None
    return Graph(cx.d, [tuple(sorted(f)) for f in nonfaces])


def incidence_columns(cx: SimplicialComplex) -> list[tuple[int, ...]]:
    """Indicator vectors of all faces in canonical column order (zero column last)."""
    order = sorted(cx.faces, key=_face_key)
    return [tuple((f >> i) & 1 for i in range(cx.d)) for f in order]


def incidence_matrix(cx: SimplicialComplex):
    """The incidence configuration, with the empty face as the distinguished zero column."""
    from .toric import Configuration

    return Configuration.from_columns(incidence_columns(cx))


def induced_subcomplex(cx: SimplicialComplex, vertices: Iterable[int]) -> SimplicialComplex:
    vs = sorted(set(vertices))
    vmask = set_to_mask(vs)
    pos = {v - 1: k for k, v in enumerate(vs)}
    faces = set()
    for f in cx.faces:
        if f & ~vmask == 0:
            faces.add(sum(1 << pos[i] for i in bits(f)))
    return SimplicialComplex(len(vs), frozenset(faces))


def all_complexes(d: int) -> Iterator[SimplicialComplex]:
    """Every simplicial complex on [d] (all singletons present)."""
    big = [m for m in range(1 << d) if _popcount(m) >= 2]
    big.sort(key=lambda m: (_popcount(m), m))
    base = {0} | {1 << i for i in range(d)}

    # depth-first over the faces of size >= 2, adding a face only when its boundary is present
    def extend(k: int, faces: set[int]) -> Iterator[frozenset[int]]:
        if k == len(big):
            yield frozenset(faces)
            return
        yield from extend(k + 1, faces)
        f = big[k]
        if all(f & ~(1 << i) in faces for i in bits(f)):
            faces.add(f)
            yield from extend(k + 1, faces)
            faces.discard(f)

    for faces in extend(0, set(base)):
        yield SimplicialComplex(d, faces)


def parse_complex(text: str) -> SimplicialComplex:
    """'d' on the first line, then one facet per line; the closure is taken."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty complex file")
    d = int(lines[0])
    return from_facets(d, [[int(x) for x in ln.split()] for ln in lines[1:]])


def format_complex(cx: SimplicialComplex) -> str:
    return "\n".join([str(cx.d)] + [" ".join(map(str, sorted(f))) for f in cx.facets()]) + "\n"

