"""Toric ideals of configurations and their reverse lexicographic Gröbner bases.

A configuration is a list of distinct integer columns; column ``i`` is the
variable ``i`` and maps to ``t^column * s``.  All ideals handled here are
generated by binomials with coefficients +-1 and are homogeneous for the
standard grading, so Buchberger's algorithm only ever manipulates pairs of
exponent vectors.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement, permutations
from typing import Iterable, Sequence

from .exactmath import (
    IntVec,
    determinant,
    kernel_lattice_basis,
    positive_negative_parts,
    rank,
    vec_gcd,
)

Monomial = tuple[int, ...]


class ToricError(ValueError):
    pass


class NotHarmony(ToricError):
    pass


class NotSquarefreeInput(ToricError):
    pass


class NotSquarefree(ToricError):
    pass


class TooLarge(ToricError):
    pass


class DegreeBoundExceeded(ToricError):
    pass


class CrossCheckMismatch(RuntimeError):
    """The facet-width test and order enumeration disagree; this is a bug."""


# configurations ---------------------------------------------------------------

@dataclass(frozen=True)
class Configuration:
    columns: tuple[IntVec, ...]
    names: tuple[str, ...]
    roles: tuple[str, ...] = ()

    def __post_init__(self):
        if len(set(self.columns)) != len(self.columns):
            raise ToricError("configuration columns must be pairwise distinct")
        if self.columns and len({len(c) for c in self.columns}) != 1:
            raise ToricError("columns have different lengths")
        if len(self.names) != len(self.columns):
            raise ToricError("one variable name per column is required")

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]], names: Sequence[str] | None = None,
                     roles: Sequence[str] = ()) -> Configuration:
        cols = tuple(tuple(int(x) for x in c) for c in columns)
        if names is None:
            names = []
            k = 0
            for c in cols:
                if any(c):
                    k += 1
                    names.append(f"x{k}")
                else:
                    names.append("z")
        return cls(cols, tuple(names), tuple(roles))

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]], sharp: bool = False) -> Configuration:
        cols = list(zip(*rows)) if rows else []
        if sharp:
            d = len(rows)
            if any(not any(c) for c in cols):
                raise ToricError("matrix already has a zero column")
            cols.append((0,) * d)
        return cls.from_columns(cols)

    @property
    def d(self) -> int:
        return len(self.columns[0]) if self.columns else 0

    @property
    def n(self) -> int:
        return len(self.columns)

    @property
    def zero_index(self) -> int | None:
        for i, c in enumerate(self.columns):
            if not any(c):
                return i
        return None

    @property
    def has_zero_column(self) -> bool:
        return self.zero_index is not None

    def nonzero_indices(self) -> list[int]:
        z = self.zero_index
        return [i for i in range(self.n) if i != z]

    def sharp(self) -> Configuration:
        if self.has_zero_column:
            return self
        return Configuration.from_columns(self.columns + ((0,) * self.d,),
                                          self.names + ("z",))

    def homogenized_rows(self) -> tuple[IntVec, ...]:
        rows = [tuple(c[k] for c in self.columns) for k in range(self.d)]
        rows.append((1,) * self.n)
        return tuple(rows)

    def image(self, e: Sequence[int]) -> IntVec:
        """pi(x^e) as the exponent vector of t, followed by the exponent of s."""
        return tuple(sum(c[k] * x for c, x in zip(self.columns, e)) for k in range(self.d)) + (sum(e),)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ToricError(f"unknown variable {name!r}; known: {', '.join(self.names)}") from None

    def format_monomial(self, e: Sequence[int]) -> str:
        parts = []
        for name, x in zip(self.names, e):
            if x == 1:
                parts.append(name)
            elif x > 1:
                parts.append(f"{name}^{x}")
        return "*".join(parts) if parts else "1"

    def format_binomial(self, b: Binomial) -> str:
        return f"{self.format_monomial(b.plus)} - {self.format_monomial(b.minus)}"


def parse_configuration(text: str) -> Configuration:
    """The integer matrix format, optionally followed by a line 'sharp'."""
    from .exactmath import parse_matrix

    rows, rest = parse_matrix(text)
    flags = {ln.lower() for ln in rest}
    unknown = flags - {"sharp"}
    if unknown:
        raise ValueError(f"unexpected trailing lines: {sorted(unknown)}")
    return Configuration.from_matrix(rows, sharp="sharp" in flags)


# binomials and orders -------------------------------------------------------

@dataclass(frozen=True)
class Binomial:
    plus: Monomial
    minus: Monomial

    @classmethod
    def from_vector(cls, v: Sequence[int]) -> Binomial:
        p, m = positive_negative_parts(v)
        return cls(p, m)

    def vector(self) -> IntVec:
        return tuple(a - b for a, b in zip(self.plus, self.minus))

    def is_zero(self) -> bool:
        return self.plus == self.minus

    def unordered(self) -> frozenset[Monomial]:
        return frozenset((self.plus, self.minus))


@dataclass(frozen=True)
class MonomialOrder:
    """Degree reverse lexicographic order; ``ranking`` lists variables largest first."""

    ranking: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.ranking) != list(range(len(self.ranking))):
            raise ToricError(f"ranking {self.ranking} is not a permutation")

    @classmethod
    def default(cls, n: int, smallest: int | None = None) -> MonomialOrder:
        rank_ = [i for i in range(n) if i != smallest]
        if smallest is not None:
            rank_.append(smallest)
        return cls(tuple(rank_))

    def key(self, e: Sequence[int]) -> tuple:
        # larger key means larger monomial
        return (sum(e),) + tuple(-e[v] for v in reversed(self.ranking))

    def greater(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return self.key(u) > self.key(v)

    @property
    def smallest(self) -> int:
        return self.ranking[-1]

    def describe(self, config: Configuration) -> str:
        """Display as in 'z < x2 < x1 < ...'."""
        return " < ".join(config.names[i] for i in reversed(self.ranking))


def parse_order(config: Configuration, text: str) -> MonomialOrder:
    """Read a variable ordering.

    ``a < b < c`` and ``c > b > a`` are explicit.  A comma-separated list is
    read smallest first, the way orderings are usually displayed
    (``z,x2,x1`` means ``z < x2 < x1``).
    """
    text = text.strip()
    if "<" in text:
        names = [s.strip() for s in text.split("<")]
    elif ">" in text:
        names = [s.strip() for s in text.split(">")][::-1]
    else:
        names = [s.strip() for s in text.split(",")]
    names = [s for s in names if s]
    if sorted(names) != sorted(config.names):
        raise ToricError(f"order must list every variable exactly once: {', '.join(config.names)}")
    return MonomialOrder(tuple(config.index(s) for s in reversed(names)))


# Buchberger -------------------------------------------------------------------

def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _support_mask(e: Monomial) -> int:
    m = 0
    for i, x in enumerate(e):
        if x:
            m |= 1 << i
    return m


class _Reducer:
    """Rewrites monomials modulo a set of oriented binomials (lead, trail)."""

    def __init__(self):
        self.elems: list[tuple[Monomial, Monomial]] = []
        self.masks: list[int] = []

    def add(self, lead: Monomial, trail: Monomial) -> None:
        self.elems.append((lead, trail))
        self.masks.append(_support_mask(lead))

    def reduce(self, m: Monomial, skip: int = -1) -> Monomial:
        while True:
            mm = _support_mask(m)
            for k, (lead, trail) in enumerate(self.elems):
                if k == skip or self.masks[k] & ~mm:
                    continue
                if _divides(lead, m):
                    m = tuple(x - a + b for x, a, b in zip(m, lead, trail))
                    break
            else:
                return m


@dataclass(frozen=True)
class GroebnerBasis:
    order: MonomialOrder
    elements: tuple[Binomial, ...]

    def leads(self) -> list[Monomial]:
        return [b.plus for b in self.elements]

    def normal_form(self, m: Monomial) -> Monomial:
        red = _Reducer()
        for b in self.elements:
            red.add(b.plus, b.minus)
        return red.reduce(m)


def _orient(order: MonomialOrder, u: Monomial, v: Monomial) -> tuple[Monomial, Monomial]:
    return (u, v) if order.key(u) > order.key(v) else (v, u)


def buchberger(gens: Iterable[Binomial], order: MonomialOrder) -> GroebnerBasis:
    """Reduced Gröbner basis of the binomial ideal generated by ``gens``.

    Pairs are processed by increasing degree of their lcm; useless pairs are
    discarded with the Gebauer-Möller criteria.
    """
    red = _Reducer()
    todo = []
    for g in gens:
        if not g.is_zero():
            todo.append(_orient(order, g.plus, g.minus))
    todo.sort(key=lambda p: order.key(p[0]))
    pairs: dict[tuple[int, int], Monomial] = {}
    heap: list[tuple[int, int, int, int]] = []
    counter = 0

    def insert(u: Monomial, v: Monomial) -> None:
        nonlocal counter
        u, v = red.reduce(u), red.reduce(v)
        if u == v:
            return
        lead, trail = _orient(order, u, v)
        k = len(red.elems)
        # criterion B on existing pairs
        for key, l_ in list(pairs.items()):
            i, j = key
            if (_divides(lead, l_) and _lcm(red.elems[i][0], lead) != l_
                    and _lcm(red.elems[j][0], lead) != l_):
                del pairs[key]
        new = [(i, _lcm(red.elems[i][0], lead), _coprime(red.elems[i][0], lead)) for i in range(k)]
        # criterion M: drop pairs whose lcm is a proper multiple of another new lcm
        kept = [c for c in new if not any(o[1] != c[1] and _divides(o[1], c[1]) for o in new)]
        # criterion F and the product criterion on classes of equal lcm
        by_lcm: dict[Monomial, list] = {}
        for c in kept:
            by_lcm.setdefault(c[1], []).append(c)
        red.add(lead, trail)
        for l_, group in by_lcm.items():
            if any(c[2] for c in group):
                continue
            i = group[0][0]
            pairs[(i, k)] = l_
            heapq.heappush(heap, (sum(l_), counter, i, k))
            counter += 1

    for u, v in todo:
        insert(u, v)
    while heap:
        _, _, i, j = heapq.heappop(heap)
        l_ = pairs.pop((i, j), None)
        if l_ is None:
            continue
        li, ti = red.elems[i]
        lj, tj = red.elems[j]
        s1 = tuple(a - b + c for a, b, c in zip(l_, li, ti))
        s2 = tuple(a - b + c for a, b, c in zip(l_, lj, tj))
        insert(s1, s2)
    return _reduce_basis(red.elems, order)


def _reduce_basis(elems: list[tuple[Monomial, Monomial]], order: MonomialOrder) -> GroebnerBasis:
    # keep elements whose lead is minimal, then reduce the trailing terms
    elems = sorted(set(elems), key=lambda p: order.key(p[0]))
    minimal: list[tuple[Monomial, Monomial]] = []
    for lead, trail in elems:
        if any(_divides(m, lead) for m, _ in minimal):
            continue
        minimal.append((lead, trail))
    red = _Reducer()
    for lead, trail in minimal:
        red.add(lead, trail)
    out = []
    for k, (lead, trail) in enumerate(minimal):
        out.append(Binomial(lead, red.reduce(trail, skip=k)))
    out.sort(key=lambda b: (order.key(b.plus), order.key(b.minus)), reverse=True)
    return GroebnerBasis(order, tuple(out))


def is_groebner(gens: Sequence[Binomial], order: MonomialOrder) -> bool:
    """Buchberger's criterion: every S-pair reduces to zero."""
    red = _Reducer()
    for b in gens:
        lead, trail = _orient(order, b.plus, b.minus)
        red.add(lead, trail)
    for i in range(len(red.elems)):
        for j in range(i + 1, len(red.elems)):
            li, ti = red.elems[i]
            lj, tj = red.elems[j]
            l_ = _lcm(li, lj)
            s1 = tuple(a - b + c for a, b, c in zip(l_, li, ti))
            s2 = tuple(a - b + c for a, b, c in zip(l_, lj, tj))
            if red.reduce(s1) != red.reduce(s2):
                return False
    return True


# toric ideals -----------------------------------------------------------------

def _saturate_once(gens: list[Binomial], n: int, var: int) -> tuple[list[Binomial], bool]:
    gb = buchberger(gens, MonomialOrder.default(n, smallest=var))
    out = []
    changed = False
    for b in gb.elements:
        k = min(b.plus[var], b.minus[var])
        if k:
            changed = True
            p = list(b.plus)
            m = list(b.minus)
            p[var] -= k
            m[var] -= k
            out.append(Binomial(tuple(p), tuple(m)))
        else:
            out.append(b)
    return out, changed


def saturate(gens: Sequence[Binomial], n: int) -> list[Binomial]:
    """Saturate a homogeneous binomial ideal by the product of all variables."""
    current = [b for b in gens if not b.is_zero()]
    if not current:
        return []
    while True:
        changed_any = False
        for var in range(n):
            current, changed = _saturate_once(current, n, var)
            changed_any |= changed
        if not changed_any:
            return current


def _size_reduce(basis: list[IntVec]) -> list[IntVec]:
    # greedy pairwise reduction keeps lattice-basis entries small
    basis = [list(v) for v in basis]
    improved = True
    while improved:
        improved = False
        for i in range(len(basis)):
            for j in range(len(basis)):
                if i == j:
                    continue
                for sign in (1, -1):
                    cand = [a - sign * b for a, b in zip(basis[i], basis[j])]
                    if sum(abs(x) for x in cand) < sum(abs(x) for x in basis[i]):
                        basis[i] = cand
                        improved = True
    return [tuple(v) for v in basis]


@lru_cache(maxsize=512)
def _toric_generators(columns: tuple[IntVec, ...]) -> tuple[Binomial, ...]:
    config = Configuration.from_columns(columns)
    kernel = kernel_lattice_basis(config.homogenized_rows())
    if not kernel:
        return ()
    kernel = _size_reduce(kernel)
    gens = [Binomial.from_vector(v) for v in kernel]
    # low-degree fiber moves already lie in the toric ideal; they shorten saturation
    gens += _fiber_moves(config, SEED_DEGREE)
    return tuple(saturate(gens, config.n))


SEED_DEGREE = 2


def _fiber_moves(config: Configuration, max_degree: int) -> list[Binomial]:
    moves = []
    for k in range(2, max_degree + 1):
        groups: dict[IntVec, list[Monomial]] = {}
        for e in monomials_of_degree(config.n, k):
            groups.setdefault(config.image(e), []).append(e)
        for monos in groups.values():
            for other in monos[1:]:
                moves.append(Binomial(monos[0], other))
    return moves


def toric_ideal_generators(config: Configuration) -> list[Binomial]:
    """Binomial generators of the toric ideal of ``config`` (kernel lattice, then saturation)."""
    return list(_toric_generators(config.columns))


def toric_groebner_basis(config: Configuration, order: MonomialOrder) -> GroebnerBasis:
    if len(order.ranking) != config.n:
        raise ToricError("order has the wrong number of variables")
    return buchberger(toric_ideal_generators(config), order)


def in_ideal(config: Configuration, b: Binomial) -> bool:
    """Membership of a binomial in the toric ideal: equal images under pi."""
    return config.image(b.plus) == config.image(b.minus)


# initial ideals -----------------------------------------------------------------

@dataclass(frozen=True)
class MonomialIdeal:
    generators: tuple[Monomial, ...]

    @classmethod
    def minimalize(cls, monos: Iterable[Monomial]) -> MonomialIdeal:
        ms = sorted(set(monos), key=lambda m: (sum(m), m))
        out: list[Monomial] = []
        for m in ms:
            if not any(_divides(g, m) for g in out):
                out.append(m)
        return cls(tuple(sorted(out)))

    def contains(self, m: Monomial) -> bool:
        return any(_divides(g, m) for g in self.generators)

    def is_squarefree(self) -> bool:
        return all(x <= 1 for g in self.generators for x in g)

    def degrees(self) -> list[int]:
        return [sum(g) for g in self.generators]


def initial_ideal(gb: GroebnerBasis) -> MonomialIdeal:
    return MonomialIdeal.minimalize(gb.leads())


def is_squarefree(ideal: MonomialIdeal) -> bool:
    return ideal.is_squarefree()


# harmony and the merged construction ------------------------------------------------

def _block_columns(block) -> tuple[IntVec, ...]:
    cols = block.columns if isinstance(block, Configuration) else tuple(tuple(c) for c in block)
    for c in cols:
        if any(x < 0 for x in c):
            raise ToricError("block columns must be nonnegative")
        if not any(c):
            raise ToricError("block columns must be nonzero")
    if len(set(cols)) != len(cols):
        raise ToricError("block columns must be pairwise distinct")
    return cols


def is_harmony(a_block, b_block) -> bool:
    """For all columns a of A# and b of B#, (a-b)+ is a column of A# and (a-b)- of B#."""
    a_cols = _block_columns(a_block)
    b_cols = _block_columns(b_block)
    d = len(a_cols[0]) if a_cols else len(b_cols[0])
    zero = (0,) * d
    a_sharp = set(a_cols) | {zero}
    b_sharp = set(b_cols) | {zero}
    for a in a_sharp:
        for b in b_sharp:
            plus, minus = positive_negative_parts(tuple(x - y for x, y in zip(a, b)))
            if plus not in a_sharp or minus not in b_sharp:
                return False
    return True


def merge_config(a_block, b_block) -> Configuration:
    """Columns [-b_1..-b_m, a_1..a_n, 0] named y1..ym, x1..xn, z."""
    a_cols = _block_columns(a_block)
    b_cols = _block_columns(b_block)
    d = len(a_cols[0]) if a_cols else len(b_cols[0])
    cols = [tuple(-x for x in b) for b in b_cols] + list(a_cols) + [(0,) * d]
    names = [f"y{j + 1}" for j in range(len(b_cols))] + [f"x{i + 1}" for i in range(len(a_cols))] + ["z"]
    roles = ["y"] * len(b_cols) + ["x"] * len(a_cols) + ["z"]
    return Configuration.from_columns(cols, names, roles)


def _divisibility_key(c: Sequence[int]):
    return (-sum(c), tuple(-x for x in c))


def divisibility_ranking(columns: Sequence[Sequence[int]]) -> list[int]:
    """Indices of nonzero columns, componentwise-larger columns first."""
    idx = [i for i, c in enumerate(columns) if any(c)]
    return sorted(idx, key=lambda i: _divisibility_key(columns[i]))


def divisibility_order(block) -> MonomialOrder:
    """Revlex order on A# (zero column appended last) refining componentwise divisibility."""
    cols = _block_columns(block)
    return MonomialOrder(tuple(divisibility_ranking(cols)) + (len(cols),))


def block_sharp(block) -> Configuration:
    cols = _block_columns(block)
    return Configuration.from_columns(list(cols) + [(0,) * len(cols[0])])


@dataclass(frozen=True)
class Theorem1Data:
    config: Configuration
    order: MonomialOrder
    pairs: tuple[tuple[int, int], ...]
    monomials: MonomialIdeal
    a_initial: MonomialIdeal
    b_initial: MonomialIdeal


def theorem1_construction(a_block, b_block) -> Theorem1Data:
    """Merged order, support-intersecting pairs and predicted initial generators.

    ``pairs`` are 1-based (i, j) with supp(a_i) meeting supp(b_j); the
    monomials are exponent vectors over the variables of :func:`merge_config`.
    """
    a_cols = _block_columns(a_block)
    b_cols = _block_columns(b_block)
    if not is_harmony(a_cols, b_cols):
        raise NotHarmony("the blocks are not of harmony")
    n, m = len(a_cols), len(b_cols)
    config = merge_config(a_cols, b_cols)
    a_order = divisibility_order(a_cols)
    b_order = divisibility_order(b_cols)
    a_init = initial_ideal(toric_groebner_basis(block_sharp(a_cols), a_order))
    b_init = initial_ideal(toric_groebner_basis(block_sharp(b_cols), b_order))
    if not a_init.is_squarefree() or not b_init.is_squarefree():
        raise NotSquarefreeInput("a block's divisibility order gives a non-squarefree initial ideal")

    # merged variables: y_j -> j, x_i -> m + i, z -> m + n
    ranking = ([j for j in b_order.ranking if j < m]
               + [m + i for i in a_order.ranking if i < n] + [m + n])
    order = MonomialOrder(tuple(ranking))
    pairs = tuple((i + 1, j + 1) for i in range(n) for j in range(m)
                  if any(x and y for x, y in zip(a_cols[i], b_cols[j])))
    total = m + n + 1
    monos = []
    for i, j in pairs:
        e = [0] * total
        e[m + i - 1] = 1
        e[j - 1] = 1
        monos.append(tuple(e))
    for g in a_init.generators:
        e = [0] * total
        for i in range(n):
            e[m + i] = g[i]
        e[m + n] = g[n]
        monos.append(tuple(e))
    for g in b_init.generators:
        e = [0] * total
        for j in range(m):
            e[j] = g[j]
        e[m + n] = g[m]
        monos.append(tuple(e))
    return Theorem1Data(config, order, pairs, MonomialIdeal(tuple(sorted(monos))), a_init, b_init)


@dataclass(frozen=True)
class Theorem1Check:
    holds: bool
    data: Theorem1Data
    basis: GroebnerBasis
    initial: MonomialIdeal

    def __bool__(self) -> bool:
        return self.holds


def verify_theorem1(a_block, b_block) -> Theorem1Check:
    """Compute the merged Gröbner basis directly and compare with the predicted generators."""
    data = theorem1_construction(a_block, b_block)
    gb = toric_groebner_basis(data.config, data.order)
    init = initial_ideal(gb)
    holds = (set(init.generators) == set(data.monomials.generators)
             and init.is_squarefree())
    return Theorem1Check(holds, data, gb, init)


# searches over orders -------------------------------------------------------------

EXHAUSTIVE_LIMIT = 8
CROSSCHECK_LIMIT = 6


def squarefree_under(config: Configuration, order: MonomialOrder) -> bool:
    return initial_ideal(toric_groebner_basis(config, order)).is_squarefree()


def exists_squarefree_revlex_z_smallest(config: Configuration,
                                        orders: Iterable[MonomialOrder] | None = None
                                        ) -> MonomialOrder | None:
    """First revlex order with the zero column smallest giving a squarefree initial ideal.

    Without ``orders`` every ranking of the nonzero columns is tried, which is
    only allowed for at most ``EXHAUSTIVE_LIMIT`` nonzero columns.
    """
    z = config.zero_index
    if z is None:
        raise ToricError("configuration has no zero column")
    if orders is None:
        rest = config.nonzero_indices()
        if len(rest) > EXHAUSTIVE_LIMIT:
            raise TooLarge(f"{len(rest)} nonzero columns exceed the exhaustive limit {EXHAUSTIVE_LIMIT}")
        orders = (MonomialOrder(tuple(p) + (z,)) for p in permutations(rest))
    gens = toric_ideal_generators(config)
    if not gens:
        return MonomialOrder(tuple(config.nonzero_indices()) + (z,))
    for order in orders:
        if order.smallest != z:
            raise ToricError("orders must rank the zero column smallest")
        if initial_ideal(buchberger(gens, order)).is_squarefree():
            return order
    return None


def squarefree_for_all_orders(config: Configuration) -> bool:
    """Exhaustive check over all n! revlex orders (small configurations only)."""
    gens = toric_ideal_generators(config)
    if not gens:
        return True
    for perm in permutations(range(config.n)):
        if not initial_ideal(buchberger(gens, MonomialOrder(perm))).is_squarefree():
            return False
    return True


def _affine_coordinates(config: Configuration) -> list[tuple[int, ...]]:
    """Project the columns injectively onto independent coordinates of their affine span."""
    rows = config.homogenized_rows()
    ones = rows[-1]
    chosen = [ones]
    keep = []
    for k, row in enumerate(rows[:-1]):
        if rank(chosen + [row]) == len(chosen) + 1:
            chosen.append(row)
            keep.append(k)
    return [tuple(c[k] for k in keep) for c in config.columns]


def facet_widths(config: Configuration) -> list[int]:
    """Width of conv(columns) along each facet, measured in the affine lattice of the columns."""
    from .polytopes import VPolytope

    pts = _affine_coordinates(config)
    if not pts[0]:
        return []
    poly = VPolytope.from_points(pts)
    widths = []
    for f in poly.facets:
        vals = [sum(a * x for a, x in zip(f.normal, p)) for p in pts]
        step = vec_gcd(v - vals[0] for v in vals)
        widths.append((max(vals) - min(vals)) // step)
    return widths


def is_compressed(config: Configuration, cross_check: bool | None = None) -> bool:
    """Squarefree initial ideal for every revlex order, via facet widths.

    Configurations with at most ``CROSSCHECK_LIMIT`` nonzero columns are also
    checked by enumerating every order; disagreement raises CrossCheckMismatch.
    """
    verdict = all(w == 1 for w in facet_widths(config))
    if cross_check is None:
        cross_check = len(config.nonzero_indices()) <= CROSSCHECK_LIMIT
    if cross_check:
        brute = squarefree_for_all_orders(config)
        if brute != verdict:
            raise CrossCheckMismatch(f"facet widths say {verdict}, order enumeration says {brute}")
    return verdict


# fibers ---------------------------------------------------------------------------

DEFAULT_DEGREE_BOUND = 6


def monomials_of_degree(n: int, degree: int):
    for combo in combinations_with_replacement(range(n), degree):
        e = [0] * n
        for i in combo:
            e[i] += 1
        yield tuple(e)


def fiber(config: Configuration, target: Sequence[int], degree: int | None = None,
          bound: int = DEFAULT_DEGREE_BOUND) -> list[Monomial]:
    """All monomials whose image under pi is ``target``.

    ``target`` is the t-exponent vector; the s-exponent is ``degree``, or the
    last entry of ``target`` when it has length d+1.
    """
    target = tuple(target)
    if degree is None:
        if len(target) != config.d + 1:
            raise ToricError("give the total degree or a target of length d+1")
        degree = target[-1]
        target = target[:-1]
    if degree > bound:
        raise DegreeBoundExceeded(f"degree {degree} exceeds the bound {bound}")
    want = target + (degree,)
    return [e for e in monomials_of_degree(config.n, degree) if config.image(e) == want]


def fibers_up_to(config: Configuration, max_degree: int) -> dict[IntVec, list[Monomial]]:
    out: dict[IntVec, list[Monomial]] = {}
    for k in range(max_degree + 1):
        for e in monomials_of_degree(config.n, k):
            out.setdefault(config.image(e), []).append(e)
    return out


def standard_monomials_biject_fibers(config: Configuration, ideal: MonomialIdeal,
                                     max_degree: int = 4) -> bool:
    """Every fiber up to ``max_degree`` holds exactly one monomial outside ``ideal``."""
    for monos in fibers_up_to(config, max_degree).values():
        if sum(1 for e in monos if not ideal.contains(e)) != 1:
            return False
    return True


# triangulations -------------------------------------------------------------------

@dataclass(frozen=True)
class Triangulation:
    config: Configuration
    simplices: tuple[tuple[int, ...], ...]
    quadratic: bool

    def volumes(self) -> list[int]:
        return [abs(determinant([self.config.columns[i] + (1,) for i in s])) for s in self.simplices]

    @property
    def is_unimodular(self) -> bool:
        return all(v == 1 for v in self.volumes())

    @property
    def is_quadratic_squarefree(self) -> bool:
        return self.quadratic

    def all_contain(self, index: int) -> bool:
        return all(index in s for s in self.simplices)


def stanley_reisner_facets(n: int, ideal: MonomialIdeal) -> list[tuple[int, ...]]:
    """Maximal subsets of range(n) containing the support of no generator."""
    supports = [_support_mask(g) for g in ideal.generators]
    facets = []

    def extend(start: int, face: int) -> None:
        grown = False
        for i in range(n):
            if face >> i & 1:
                continue
            cand = face | (1 << i)
            if any(s & cand == s for s in supports):
                continue
            grown = True
            if i >= start:
                extend(i + 1, cand)
        if not grown:
            facets.append(tuple(i for i in range(n) if face >> i & 1))

    extend(0, 0)
    return sorted(set(facets))


def triangulation_from_initial_ideal(config: Configuration, ideal: MonomialIdeal) -> Triangulation:
    if not ideal.is_squarefree():
        raise NotSquarefree("the initial ideal is not squarefree")
    d = config.d
    simplices = []
    for f in stanley_reisner_facets(config.n, ideal):
        if len(f) == d + 1 and rank([config.columns[i] + (1,) for i in f]) == d + 1:
            simplices.append(f)
    quadratic = all(sum(g) == 2 for g in ideal.generators)
    return Triangulation(config, tuple(simplices), quadratic)


def shuffled(gens: Sequence[Binomial], seed: int) -> list[Binomial]:
    """A random permutation of the generators with random sign flips."""
    rng = random.Random(seed)
    out = [Binomial(b.minus, b.plus) if rng.random() < 0.5 else b for b in gens]
    rng.shuffle(out)
    return out

