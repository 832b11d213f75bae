"""Finite simple graphs on {1..d}, stable sets and perfection.

Vertex sets are handled internally as bitmasks (bit ``i-1`` is vertex ``i``).
Perfection is decided through odd holes of the graph and of its complement,
by brute force over vertex subsets; this is meant for d <= 8.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable, Iterator

MAX_CANONICAL_D = 8


def bits(mask: int) -> Iterator[int]:
    """Yield the 0-based positions of the set bits of ``mask``."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_to_set(mask: int) -> frozenset[int]:
    return frozenset(i + 1 for i in bits(mask))


def set_to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


@dataclass(frozen=True)
class Graph:
    d: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, d: int, edges: Iterable[Iterable[int]] = ()):
        norm = set()
        for e in edges:
            i, j = e
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (1 <= i <= d and 1 <= j <= d):
                raise ValueError(f"edge {i}-{j} outside vertex range 1..{d}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "edges", frozenset(norm))

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Neighbourhood bitmask of each vertex, 0-based."""
        adj = [0] * self.d
        for i, j in self.edges:
            adj[i - 1] |= 1 << (j - 1)
            adj[j - 1] |= 1 << (i - 1)
        return tuple(adj)

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def complement(self) -> Graph:
        return Graph(self.d, [e for e in combinations(range(1, self.d + 1), 2)
                              if e not in self.edges])

    def induced(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph, relabelled to 1..k in increasing order."""
        vs = sorted(set(vertices))
        pos = {v: k + 1 for k, v in enumerate(vs)}
        return Graph(len(vs), [(pos[i], pos[j]) for i, j in self.edges
                               if i in pos and j in pos])

    def relabel(self, perm: dict[int, int] | tuple[int, ...]) -> Graph:
        """Relabel vertex ``v`` to ``perm[v]``; a tuple is read 0-based as ``perm[v-1]``."""
        if isinstance(perm, tuple):
            return Graph(self.d, [(perm[i - 1], perm[j - 1]) for i, j in self.edges])
        return Graph(self.d, [(perm[i], perm[j]) for i, j in self.edges])

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def is_stable_mask(self, mask: int) -> bool:
        adj = self.adjacency
        return all(not (adj[i] & mask) for i in bits(mask))

    def to_json(self) -> dict:
        return {"d": self.d, "edges": [list(e) for e in self.sorted_edges()]}


# constructors ---------------------------------------------------------------

def complete_graph(d: int) -> Graph:
    return Graph(d, combinations(range(1, d + 1), 2))


def empty_graph(d: int) -> Graph:
    return Graph(d)


def cycle_graph(d: int) -> Graph:
    return Graph(d, [(i, i % d + 1) for i in range(1, d + 1)])


def path_graph(d: int) -> Graph:
    return Graph(d, [(i, i + 1) for i in range(1, d)])


# stable sets, cliques, colourings ---------------------------------------------

def stable_set_masks(g: Graph) -> list[int]:
    """All stable sets as bitmasks, in increasing mask order."""
    adj = g.adjacency
    out = []
    for mask in range(1 << g.d):
        if all(not (adj[i] & mask) for i in bits(mask)):
            out.append(mask)
    return out


def stable_sets(g: Graph) -> list[frozenset[int]]:
    return [mask_to_set(m) for m in stable_set_masks(g)]


def _stable_flags(adj: tuple[int, ...], d: int) -> list[bool]:
    # stable[S] computed from S minus its lowest vertex
    stable = [True] * (1 << d)
    for s in range(1, 1 << d):
        low = (s & -s).bit_length() - 1
        rest = s & (s - 1)
        stable[s] = stable[rest] and not (adj[low] & rest)
    return stable


def clique_number(g: Graph) -> int:
    cadj = g.complement().adjacency
    stable = _stable_flags(cadj, g.d)
    return max(bin(s).count("1") for s in range(1 << g.d) if stable[s])


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number by dynamic programming over vertex subsets."""
    return _chromatic_table(g.adjacency, g.d)[(1 << g.d) - 1]


def _chromatic_table(adj: tuple[int, ...], d: int) -> list[int]:
    # chi[S] = 1 + min chi[S \ T] over stable T containing the lowest vertex of S
    stable = _stable_flags(adj, d)
    chi = [0] * (1 << d)
    for s in range(1, 1 << d):
        low = s & -s
        rest = s ^ low
        best = d + 1
        t = rest
        while True:
            if stable[t | low]:
                c = chi[rest & ~t] + 1
                if c < best:
                    best = c
            if t == 0:
                break
            t = (t - 1) & rest
        chi[s] = best
    return chi


def _clique_table(adj: tuple[int, ...], d: int) -> list[int]:
    full = (1 << d) - 1
    cadj = tuple(full & ~a & ~(1 << i) for i, a in enumerate(adj))
    stable_in_complement = _stable_flags(cadj, d)
    omega = [0] * (1 << d)
    for s in range(1, 1 << d):
        if stable_in_complement[s]:
            omega[s] = bin(s).count("1")
        else:
            omega[s] = max(omega[s & ~(1 << i)] for i in bits(s))
    return omega


def is_perfect_by_definition(g: Graph) -> bool:
    """Check chromatic number = clique number on every induced subgraph."""
    chi = _chromatic_table(g.adjacency, g.d)
    omega = _clique_table(g.adjacency, g.d)
    return chi == omega


# holes ----------------------------------------------------------------------

def _induced_cycle_order(adj: tuple[int, ...], mask: int) -> list[int] | None:
    """If ``mask`` induces a chordless cycle, return its vertices in cycle order."""
    verts = list(bits(mask))
    for v in verts:
        if bin(adj[v] & mask).count("1") != 2:
            return None
    start = verts[0]
    order = [start]
    prev, cur = None, start
    while True:
        nbrs = [w for w in bits(adj[cur] & mask) if w != prev]
        nxt = nbrs[0] if prev is not None else min(nbrs)
        if nxt == start:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    return order if len(order) == len(verts) else None


def find_odd_hole(g: Graph) -> tuple[int, ...] | None:
    """Smallest induced odd cycle of length >= 5, as a 1-based vertex cycle."""
    adj = g.adjacency
    for k in range(5, g.d + 1, 2):
        for combo in combinations(range(g.d), k):
            mask = sum(1 << v for v in combo)
            order = _induced_cycle_order(adj, mask)
            if order is not None:
                return tuple(v + 1 for v in order)
    return None


def find_odd_antihole(g: Graph) -> tuple[int, ...] | None:
    """Vertices of an odd hole of the complement, listed in the complement's cycle order."""
    return find_odd_hole(g.complement())


def is_perfect(g: Graph) -> bool:
    return find_odd_hole(g) is None and find_odd_antihole(g) is None


def perfection_certificate(g: Graph) -> dict:
    hole = find_odd_hole(g)
    if hole is not None:
        return {"perfect": False, "kind": "odd_hole", "cycle": list(hole)}
    anti = find_odd_antihole(g)
    if anti is not None:
        return {"perfect": False, "kind": "odd_antihole", "cycle": list(anti)}
    return {"perfect": True}


# canonical forms and census ----------------------------------------------------

def _edge_index(d: int) -> tuple[list[tuple[int, int]], dict[tuple[int, int], int]]:
    pairs = list(combinations(range(d), 2))
    return pairs, {p: k for k, p in enumerate(pairs)}


class _Relabeler:
    """Applies every vertex permutation of {0..d-1} to edge bitmasks."""

    def __init__(self, d: int):
        if d > MAX_CANONICAL_D:
            raise ValueError(f"canonical forms are limited to d <= {MAX_CANONICAL_D}")
        self.d = d
        self.pairs, index = _edge_index(d)
        self.nedges = len(self.pairs)
        # per permutation: byte lookup tables mapping 8 edge bits at a time
        self.tables = []
        for perm in permutations(range(d)):
            images = []
            for i, j in self.pairs:
                a, b = perm[i], perm[j]
                images.append(1 << index[(min(a, b), max(a, b))])
            chunks = []
            for start in range(0, self.nedges, 8):
                img = images[start:start + 8]
                table = [0] * 256
                for byte in range(1, 256):
                    low = byte & -byte
                    table[byte] = table[byte ^ low] | (img[low.bit_length() - 1]
                                                       if low.bit_length() - 1 < len(img) else 0)
                chunks.append(table)
            self.tables.append(chunks)

    def orbit(self, mask: int) -> set[int]:
        out = set()
        for chunks in self.tables:
            img = 0
            m = mask
            for table in chunks:
                img |= table[m & 0xFF]
                m >>= 8
            out.add(img)
        return out

    def edge_tuple(self, mask: int) -> tuple[tuple[int, int], ...]:
        return tuple(sorted((i + 1, j + 1) for k, (i, j) in enumerate(self.pairs) if mask >> k & 1))

    def graph(self, mask: int) -> Graph:
        return Graph(self.d, self.edge_tuple(mask))


def canonical_form(g: Graph) -> tuple[tuple[int, int], ...]:
    """Lexicographically least sorted edge list over all vertex relabellings."""
    if g.d > MAX_CANONICAL_D:
        raise ValueError(f"canonical_form is limited to d <= {MAX_CANONICAL_D}, got {g.d}")
    best = None
    for perm in permutations(range(1, g.d + 1)):
        e = tuple(sorted((min(perm[i - 1], perm[j - 1]), max(perm[i - 1], perm[j - 1]))
                         for i, j in g.edges))
        if best is None or e < best:
            best = e
    return best if best is not None else ()


def isomorphism_classes(n: int) -> list[Graph]:
    """One representative (its canonical form) per isomorphism class on n vertices.

    Every labelled graph is visited; the orbit of each unseen graph is
    computed and marked, so each class is handled once.
    """
    if n == 0:
        return [Graph(0)]
    rel = _Relabeler(n)
    seen = bytearray(1 << rel.nedges)
    reps = []
    for mask in range(1 << rel.nedges):
        if seen[mask]:
            continue
        orbit = rel.orbit(mask)
        for m in orbit:
            seen[m] = 1
        reps.append(min(rel.edge_tuple(m) for m in orbit))
    reps.sort(key=lambda e: (len(e), e))
    return [Graph(n, e) for e in reps]


def perfect_classes(n: int) -> list[Graph]:
    return [g for g in isomorphism_classes(n) if is_perfect(g)]


def count_perfect(n: int) -> int:
    if n < 1:
        raise ValueError("n must be at least 1")
    return len(perfect_classes(n))


def count_perfect_pairs(n: int) -> int:
    k = count_perfect(n)
    return k * (k + 1) // 2


def labelled_graphs(n: int) -> Iterator[Graph]:
    pairs = list(combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, [p for k, p in enumerate(pairs) if mask >> k & 1])


# text formats -----------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse either the line format ('d' then 'i j' lines) or the JSON form."""
    stripped = text.strip()
    if stripped.startswith("{"):
        data = json.loads(stripped)
        return Graph(int(data["d"]), [tuple(e) for e in data.get("edges", [])])
    lines = [ln.split("#", 1)[0].strip() for ln in stripped.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty graph file")
    d = int(lines[0])
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if len(set((min(e), max(e)) for e in edges)) != len(edges):
        raise ValueError("repeated edge")
    return Graph(d, edges)


def format_graph(g: Graph) -> str:
    return "\n".join([str(g.d)] + [f"{i} {j}" for i, j in g.sorted_edges()]) + "\n"
