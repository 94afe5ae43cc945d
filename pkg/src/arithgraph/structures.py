"""Arithmetical structures: pairs (d, r) with (diag(d) - A) r = 0.

``d`` and ``r`` are tuples of positive ints and ``r`` is primitive.  Either
one determines the other on a fixed connected graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import NamedTuple, Sequence

from .errors import InvalidInputError, ShapeError
from .graphs import Graph
from .linalg import generalized_laplacian, integer_kernel_vector, matvec


def vector_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


@dataclass(frozen=True, order=True)
class ArithPair:
    d: tuple[int, ...]
    r: tuple[int, ...]
    normalized: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))
        object.__setattr__(self, "r", tuple(int(x) for x in self.r))
        if len(self.d) != len(self.r):
            raise ShapeError("d and r have different lengths")
        if any(x < 1 for x in self.d) or any(x < 1 for x in self.r):
            raise InvalidInputError("d and r entries must be positive")
        if vector_gcd(self.r) != 1:
            raise InvalidInputError(f"r={self.r} is not primitive")

    @classmethod
    def normalize(cls, d: Sequence[int], r: Sequence[int]) -> ArithPair:
        """Build a pair, dividing r by its gcd and recording whether that happened."""
        g = vector_gcd(r)
        if g == 0:
            raise InvalidInputError("r is the zero vector")
        return cls(tuple(d), tuple(x // g for x in r), normalized=g != 1)

    def __len__(self):
        return len(self.d)

    def to_json(self) -> dict:
        return {"d": list(self.d), "r": list(self.r)}

    @classmethod
    def from_json(cls, obj: dict) -> ArithPair:
        return cls(tuple(obj["d"]), tuple(obj["r"]))


def _check_length(g: Graph, v: Sequence[int], name: str):
    if len(v) != g.vertex_count:
        raise ShapeError(f"{name} has length {len(v)}, graph has {g.vertex_count} vertices")


def laplacian_matrix(g: Graph, d: Sequence[int]) -> list[list[int]]:
    return generalized_laplacian(g.adjacency_matrix(), d)


def verify(g: Graph, d: Sequence[int], r: Sequence[int]) -> bool:
    _check_length(g, d, "d")
    _check_length(g, r, "r")
    if any(x < 1 for x in d) or any(x < 1 for x in r):
        return False
    if vector_gcd(r) != 1:
        return False
    return not any(matvec(laplacian_matrix(g, d), r))


def d_from_r(g: Graph, r: Sequence[int]) -> tuple[int, ...] | None:
    """d_v = (sum of r over neighbours) / r_v, or None if any division is inexact."""
    _check_length(g, r, "r")
    if any(x < 1 for x in r):
        raise InvalidInputError("r entries must be positive")
    if vector_gcd(r) != 1:
        raise InvalidInputError(f"r={tuple(r)} is not primitive")
    d = []
    for v in range(g.vertex_count):
        q, rem = divmod(sum(r[u] for u in g.neighbors(v)), r[v])
        if rem or q < 1:
            return None
        d.append(q)
    return tuple(d)


def r_from_d(g: Graph, d: Sequence[int]) -> tuple[int, ...] | None:
    _check_length(g, d, "d")
    r = integer_kernel_vector(laplacian_matrix(g, d))
    if r is None or any(x <= 0 for x in r):
        return None
    return tuple(r)


def pair_from_r(g: Graph, r: Sequence[int]) -> ArithPair | None:
    d = d_from_r(g, r)
    return None if d is None else ArithPair(d, tuple(r))


def pair_from_d(g: Graph, d: Sequence[int]) -> ArithPair | None:
    r = r_from_d(g, d)
    return None if r is None else ArithPair(tuple(d), r)


def laplacian_structure(g: Graph) -> ArithPair:
    return ArithPair(g.degrees(), (1,) * g.vertex_count)


def fan_divisibility_check(n: int, r: Sequence[int]) -> bool:
    if len(r) != 2 * n + 1:
        raise ShapeError(f"fan F_{n} needs {2 * n + 1} entries, got {len(r)}")
    if any(x < 1 for x in r) or vector_gcd(r) != 1:
        raise InvalidInputError("r must be positive and primitive")
    if sum(r[1:]) % r[0]:
        return False
    for i in range(1, 2 * n + 1):
        mate = i + 1 if i % 2 else i - 1
        if (r[0] + r[mate]) % r[i]:
            return False
    return True


def star_divisibility_check(n: int, r: Sequence[int]) -> bool:
    if len(r) != n + 1:
        raise ShapeError(f"star S_{n} needs {n + 1} entries, got {len(r)}")
    return all(r[0] % x == 0 for x in r[1:]) and sum(r[1:]) % r[0] == 0


def star_egyptian_check(d: Sequence[int]) -> bool:
    """d_0 == sum of 1/d_i over the leaves, in exact rationals."""
    if len(d) < 2:
        raise ShapeError("a star d-vector needs a centre and at least one leaf")
    if any(x < 1 for x in d):
        return False
    return sum(Fraction(1, x) for x in d[1:]) == d[0]


def star_r_from_egyptian(d: Sequence[int]) -> tuple[int, ...]:
    """r_0 = lcm of the leaf d's and r_i = r_0 / d_i."""
    r0 = lcm(*d[1:])
    return (r0,) + tuple(r0 // x for x in d[1:])


def dominance_compare(a: Sequence[int], b: Sequence[int]) -> str:
    if len(a) != len(b):
        raise ShapeError("vectors have different lengths")
    le = all(x <= y for x, y in zip(a, b))
    ge = all(x >= y for x, y in zip(a, b))
    if le and ge:
        return "equal"
    if le:
        return "less"
    if ge:
        return "greater"
    return "incomparable"


class SignPattern(NamedTuple):
    case: str
    below: tuple[int, ...]  # arm vertices with d_i < 2
    above: tuple[int, ...]  # arm vertices with d_i > 2


def sign_pattern_classify(n: int, d: Sequence[int]) -> SignPattern:
    """Place a fan d-structure relative to the Laplacian (2n, 2, ..., 2).

    case1: d_0 > 2n with some arm d_i < 2; case2: d_0 < 2n with some arm
    d_i > 2; case3: d_0 = 2n with arm entries on both sides of 2.  The two
    witness lists are reported separately, nothing assumes they differ.
    """
    from .graphs import make_fan

    if len(d) != 2 * n + 1:
        raise ShapeError(f"fan F_{n} needs {2 * n + 1} entries, got {len(d)}")
    if r_from_d(make_fan(n), d) is None:
        raise InvalidInputError(f"d={tuple(d)} is not an arithmetical structure on F_{n}")
    below = tuple(i for i in range(1, 2 * n + 1) if d[i] < 2)
    above = tuple(i for i in range(1, 2 * n + 1) if d[i] > 2)
    if d[0] == 2 * n and not below and not above:
        case = "laplacian"
    elif d[0] > 2 * n and below:
        case = "case1"
    elif d[0] < 2 * n and above:
        case = "case2"
    elif d[0] == 2 * n and below and above:
        case = "case3"
    else:
        raise InvalidInputError(f"d={tuple(d)} fits none of the sign patterns")
    return SignPattern(case, below, above)


def ones_count(r: Sequence[int]) -> int:
    return sum(1 for x in r if x == 1)


def neighbor_property_holds(g: Graph, d: Sequence[int]) -> bool:
    """No two adjacent vertices both carry d = 1."""
    return all(d[u] > 1 for v in range(g.vertex_count) if d[v] == 1
               for u in g.neighbors(v))
