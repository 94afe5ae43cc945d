"""Symmetries of the fan acting on r-vectors.

Positions 1..2n are grouped into arm blocks (1,2), (3,4), ...; the centre 0
is always fixed.  Orbits are computed by closing under generators rather than
listing group elements.
"""

from __future__ import annotations

from collections import deque
from typing import Iterator, Sequence

from .errors import InvalidInputError, PreconditionError, ShapeError
from .graphs import make_fan
from .structures import d_from_r

Permutation = tuple[int, ...]


def fan_size(r: Sequence[int]) -> int:
    if len(r) < 3 or len(r) % 2 == 0:
        raise ShapeError(f"fan vectors have odd length >= 3, got {len(r)}")
    return (len(r) - 1) // 2


def apply_rotation(c: int, r: Sequence[int]) -> tuple[int, ...]:
    """Rotate the arm blocks by c: (r_0, r_{2c+1}, ..., r_{2n}, r_1, ..., r_{2c})."""
    n = fan_size(r)
    c %= n
    return (r[0],) + tuple(r[2 * c + 1:]) + tuple(r[1:2 * c + 1])


def within_arm_swaps(n: int) -> list[Permutation]:
    """(l, l+1) for odd l."""
    out = []
    for l in range(1, 2 * n, 2):
        p = list(range(2 * n + 1))
        p[l], p[l + 1] = l + 1, l
        out.append(tuple(p))
    return out


def arm_swaps(n: int) -> list[Permutation]:
    """(l, m)(l+1, m+1) for odd l < m."""
    out = []
    for l in range(1, 2 * n, 2):
        for m in range(l + 2, 2 * n, 2):
            p = list(range(2 * n + 1))
            p[l], p[m] = m, l
            p[l + 1], p[m + 1] = m + 1, l + 1
            out.append(tuple(p))
    return out


def generators(n: int) -> list[Permutation]:
    return arm_swaps(n) + within_arm_swaps(n)


def apply_permutation(p: Permutation, r: Sequence[int]) -> tuple[int, ...]:
    """Move the entry at position i to position p[i]."""
    if len(p) != len(r):
        raise ShapeError("permutation and vector differ in length")
    out = [0] * len(r)
    for i, x in enumerate(r):
        out[p[i]] = x
    return tuple(out)


def _require_fan_r(n: int, r: Sequence[int]):
    try:
        ok = d_from_r(make_fan(n), r) is not None
    except InvalidInputError as exc:
        raise PreconditionError(str(exc)) from exc
    if not ok:
        raise PreconditionError(f"r={tuple(r)} is not an r-structure on F_{n}")


def h_orbit(n: int, r: Sequence[int]) -> frozenset:
    if len(r) != 2 * n + 1:
        raise ShapeError(f"F_{n} vectors have length {2 * n + 1}")
    _require_fan_r(n, r)
    gens = generators(n)
    start = tuple(r)
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for p in gens:
            w = apply_permutation(p, v)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def canonical_representative(n: int, r: Sequence[int]) -> tuple[int, ...]:
    return min(h_orbit(n, r))


def orbit_listing(n: int, r: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Orbit members, canonical representative first, the rest sorted."""
    orbit = sorted(h_orbit(n, r))
    yield from orbit
