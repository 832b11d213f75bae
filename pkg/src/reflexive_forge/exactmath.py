"""Exact integer and rational linear algebra.

Vectors are tuples of Python ints, matrices are tuples of row tuples.
Rationals are :class:`fractions.Fraction`, which already keeps a reduced
form with a positive denominator.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

IntVec = tuple[int, ...]
IntMat = tuple[IntVec, ...]
Rat = Fraction


def as_matrix(rows: Iterable[Iterable[int]]) -> IntMat:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("matrix rows have different lengths")
    return m


def transpose(m: Sequence[Sequence[int]], ncols: int | None = None) -> IntMat:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def mat_vec(m: Sequence[Sequence[int]], v: Sequence[int]) -> IntVec:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def vec_gcd(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v: Sequence[int]) -> IntVec:
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = vec_gcd(v)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def positive_negative_parts(a: Sequence[int]) -> tuple[IntVec, IntVec]:
    """Split ``a`` as ``a = plus - minus`` with both parts nonnegative."""
    plus = tuple(x if x > 0 else 0 for x in a)
    minus = tuple(-x if x < 0 else 0 for x in a)
    return plus, minus


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(m: Sequence[Sequence]) -> int:
    """Rank over the rationals."""
    a = [[Fraction(x) for x in row] for row in m]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def solve_rational(m: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """Unique solution of the square system ``m x = b``, or None if singular."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(m, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return None
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(row[n] for row in a)


def hermite_column_form(m: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], int]:
    """Column-style Hermite reduction ``m @ u = h``.

    Returns ``(h, u, r)`` where ``u`` is unimodular (square, size = number of
    columns), ``h`` is lower echelon and the first ``r`` columns of ``h`` are
    the nonzero ones.  The last ``cols - r`` columns of ``u`` therefore span
    the integer kernel of ``m``.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    h = [list(row) for row in m]
    u = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def col_op(dst: int, src: int, f: int) -> None:
        # column dst -= f * column src
        for row in h:
            row[dst] -= f * row[src]
        for row in u:
            row[dst] -= f * row[src]

    def col_swap(i: int, j: int) -> None:
        for row in h:
            row[i], row[j] = row[j], row[i]
        for row in u:
            row[i], row[j] = row[j], row[i]

    def col_neg(i: int) -> None:
        for row in h:
            row[i] = -row[i]
        for row in u:
            row[i] = -row[i]

    r = 0
    for i in range(rows):
        if r == cols:
            break
        while True:
            nz = [j for j in range(r, cols) if h[i][j] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda j: abs(h[i][j]))
            if piv != r:
                col_swap(piv, r)
            done = True
            for j in range(r + 1, cols):
                if h[i][j] != 0:
                    col_op(j, r, h[i][j] // h[i][r])
                    if h[i][j] != 0:
                        done = False
            if done:
                break
        if h[i][r] == 0:
            continue
        if h[i][r] < 0:
            col_neg(r)
        for j in range(r):
            col_op(j, r, h[i][j] // h[i][r])
        r += 1
    return h, u, r


def kernel_lattice_basis(m: Sequence[Sequence[int]], ncols: int | None = None) -> list[IntVec]:
    """Basis of the lattice ``{v integral : m v = 0}``."""
    if not m:
        n = ncols or 0
        return [tuple(int(i == j) for i in range(n)) for j in range(n)]
    _, u, r = hermite_column_form(m)
    cols = len(m[0])
    return [tuple(u[i][j] for i in range(cols)) for j in range(r, cols)]


def smith_diagonal(m: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero elementary divisors of ``m`` (each dividing the next)."""
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j] != 0]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t] != 0:
                    clean = False
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j] != 0:
                    clean = False
            if clean:
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if a[i][j] % p != 0), None)
                if bad is None:
                    break
                # pull a non-divisible entry into the pivot row
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            nz = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t] != 0]
            nz += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j] != 0]
            _, pi, pj = min(nz)
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def lattice_span_is_full(points: Sequence[Sequence[int]], d: int) -> bool:
    """True iff the integer span of ``points`` is all of Z^d."""
    if d == 0:
        return True
    if not points:
        return False
    divisors = smith_diagonal(transpose(points))
    return len(divisors) == d and all(x == 1 for x in divisors)


def parse_matrix(text: str) -> tuple[IntMat, list[str]]:
    """Read the ``rows cols`` matrix format; returns the matrix and any trailing lines."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty matrix file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("matrix header must be 'rows cols'")
    rows, cols = int(head[0]), int(head[1])
    if len(lines) < rows + 1:
        raise ValueError(f"expected {rows} matrix rows, got {len(lines) - 1}")
    body = []
    for ln in lines[1:rows + 1]:
        row = [int(x) for x in ln.split()]
        if len(row) != cols:
            raise ValueError(f"row {ln!r} does not have {cols} entries")
        body.append(tuple(row))
    return tuple(body), lines[rows + 1:]


def format_matrix(m: Sequence[Sequence[int]]) -> str:
    cols = len(m[0]) if m else 0
    out = [f"{len(m)} {cols}"]
    out += [" ".join(str(x) for x in row) for row in m]
    return "\n".join(out) + "\n"
