"""Exact integer linear algebra.

Matrices are plain lists of lists of Python ints, so entries never overflow.
Everything here is a pure function of its arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import InvalidInputError, ShapeError, SizeLimitError

IntMatrix = list[list[int]]

MINOR_ORACLE_MAX = 6


def as_matrix(m: Iterable[Iterable[int]]) -> IntMatrix:
    rows = [[int(x) for x in row] for row in m]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ShapeError("ragged matrix")
    return rows


def shape(m: Sequence[Sequence[int]]) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def _square(m) -> IntMatrix:
    a = as_matrix(m)
    r, c = shape(a)
    if r != c:
        raise ShapeError(f"expected a square matrix, got {r}x{c}")
    return a


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def diagonal(entries: Sequence[int]) -> IntMatrix:
    n = len(entries)
    return [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if a and b and len(a[0]) != len(b):
        raise ShapeError("inner dimensions differ")
    cols = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def submatrix(m: Sequence[Sequence[int]], rows: Sequence[int],
              cols: Sequence[int] | None = None) -> IntMatrix:
    cols = rows if cols is None else cols
    return [[m[i][j] for j in cols] for i in rows]


def generalized_laplacian(adjacency: Sequence[Sequence[int]], d: Sequence[int]) -> IntMatrix:
    """diag(d) - A."""
    n = len(adjacency)
    if len(d) != n:
        raise ShapeError(f"d has length {len(d)}, graph has {n} vertices")
    return [[(d[i] if i == j else 0) - int(adjacency[i][j]) for j in range(n)]
            for i in range(n)]


def determinant(m) -> int:
    """Bareiss fraction-free elimination; every division is exact."""
    a = _square(m)
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def leading_principal_minors(m) -> list[int]:
    a = _square(m)
    return [determinant(submatrix(a, range(k))) for k in range(1, len(a) + 1)]


def principal_minor(m, subset: Sequence[int]) -> int:
    return determinant(submatrix(m, list(subset)))


def proper_principal_minors(m) -> dict[tuple[int, ...], int]:
    """Every principal minor indexed by a nonempty proper subset of rows."""
    a = _square(m)
    n = len(a)
    return {s: principal_minor(a, s)
            for k in range(1, n) for s in combinations(range(n), k)}


def is_z_matrix(m) -> bool:
    a = _square(m)
    n = len(a)
    return all(a[i][j] <= 0 for i in range(n) for j in range(n) if i != j)


def is_almost_nonsingular_m_matrix(m) -> bool:
    """Z-matrix, all proper principal minors positive, determinant >= 0."""
    a = _square(m)
    if not is_z_matrix(a):
        return False
    n = len(a)
    # leading minors are a cheap necessary filter
    lead = leading_principal_minors(a)
    if any(x <= 0 for x in lead[:-1]) or (lead and lead[-1] < 0):
        return False
    return all(v > 0 for v in proper_principal_minors(a).values()) if n > 1 else True


def rank(m) -> int:
    a = [[Fraction(x) for x in row] for row in as_matrix(m)]
    return len(_rref(a)[1])


def _rref(a: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    rows, cols = shape(a)
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def primitive(v: Sequence[int]) -> list[int]:
    g = 0
    for x in v:
        g = gcd(g, x)
    return [x // g for x in v] if g > 1 else list(v)


def integer_kernel_vector(m) -> list[int] | None:
    """Primitive generator of the kernel of a square rank n-1 matrix.

    The sign is fixed so that the first nonzero entry is positive.  Returns
    None when the rank is anything other than n-1.
    """
    a = _square(m)
    n = len(a)
    red, pivots = _rref([[Fraction(x) for x in row] for row in a])
    if len(pivots) != n - 1:
        return None
    free = next(c for c in range(n) if c not in pivots)
    vec = [Fraction(0)] * n
    vec[free] = Fraction(1)
    for row, c in zip(red, pivots):
        vec[c] = -row[free]
    den = lcm(*(x.denominator for x in vec))
    out = primitive([int(x * den) for x in vec])
    first = next(x for x in out if x != 0)
    return [-x for x in out] if first < 0 else out


@dataclass(frozen=True)
class SnfResult:
    """``left @ M @ right == diag(diag)`` with unimodular ``left``/``right``."""

    diag: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]

    def diagonal_matrix(self, rows: int, cols: int) -> IntMatrix:
        out = [[0] * cols for _ in range(rows)]
        for i, x in enumerate(self.diag):
            out[i][i] = x
        return out

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(x for x in self.diag if x != 0)


def _pick_pivot(a: IntMatrix, t: int) -> tuple[int, int] | None:
    # minimal |entry|, ties broken by lowest (row, col)
    best = None
    for i in range(t, len(a)):
        for j in range(t, len(a[0])):
            x = a[i][j]
            if x != 0 and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
    return None if best is None else (best[1], best[2])


def smith_normal_form(m) -> SnfResult:
    a = as_matrix(m)
    rows, cols = shape(a)
    s = identity(rows)
    tr = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        s[i], s[j] = s[j], s[i]

    def swap_cols(i, j):
        for mat in (a, tr):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        for mat in (a, s):
            mat[dst] = [x + q * y for x, y in zip(mat[dst], mat[src])]

    def add_col(dst, src, q):
        for mat in (a, tr):
            for row in mat:
                row[dst] += q * row[src]

    for t in range(min(rows, cols)):
        while True:
            piv = _pick_pivot(a, t)
            if piv is None:
                break
            if piv[0] != t:
                swap_rows(t, piv[0])
            if piv[1] != t:
                swap_cols(t, piv[1])
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if piv is None:
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            s[t] = [-x for x in s[t]]

    diag = tuple(a[i][i] for i in range(min(rows, cols)))
    return SnfResult(diag, tuple(map(tuple, s)), tuple(map(tuple, tr)))


def minor_gcd_sequence(m) -> list[int]:
    """D_k = gcd of all k x k minors, k = 1..min(rows, cols).  Exponential; oracle only."""
    a = as_matrix(m)
    rows, cols = shape(a)
    if max(rows, cols) > MINOR_ORACLE_MAX:
        raise SizeLimitError(f"minor oracle capped at {MINOR_ORACLE_MAX}x{MINOR_ORACLE_MAX}")
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, determinant(submatrix(a, rs, cs)))
        out.append(g)
    return out


def parse_matrix_text(text: str) -> IntMatrix:
    """Read ``rows cols`` then row-major integers, whitespace separated."""
    tokens = text.split()
    if len(tokens) < 2:
        raise InvalidInputError("matrix text needs a 'rows cols' header")
    rows, cols = int(tokens[0]), int(tokens[1])
    body = tokens[2:]
    if len(body) != rows * cols:
        raise InvalidInputError(f"expected {rows * cols} entries, found {len(body)}")
    vals = [int(x) for x in body]
    return [vals[i * cols:(i + 1) * cols] for i in range(rows)]


def format_matrix_text(m: Sequence[Sequence[int]]) -> str:
    rows, cols = shape(m)
    lines = [f"{rows} {cols}"] + [" ".join(str(x) for x in row) for row in m]
    return "\n".join(lines) + "\n"
