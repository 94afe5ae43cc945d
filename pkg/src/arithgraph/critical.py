"""Critical groups: the torsion of coker(diag(d) - A), in invariant-factor form."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

from .errors import InvalidInputError, InvariantViolation, PreconditionError, ShapeError
from .graphs import Graph, make_family
from .linalg import determinant, diagonal, smith_normal_form, submatrix
from .structures import ArithPair, laplacian_matrix, r_from_d, verify


@dataclass(frozen=True)
class CriticalGroup:
    """Finite abelian group Z_{a_1} x ... x Z_{a_k} with a_1 | a_2 | ... and a_i >= 2."""

    factors: tuple[int, ...] = ()

    def __post_init__(self):
        fs = tuple(int(x) for x in self.factors)
        if any(x < 2 for x in fs):
            raise InvalidInputError(f"invariant factors must be >= 2, got {fs}")
        if any(b % a for a, b in zip(fs, fs[1:])):
            raise InvalidInputError(f"{fs} is not a divisibility chain")
        object.__setattr__(self, "factors", fs)

    @property
    def order(self) -> int:
        return prod(self.factors)

    def is_trivial(self) -> bool:
        return not self.factors

    def __str__(self):
        return " x ".join(f"Z_{a}" for a in self.factors) if self.factors else "trivial"

    def to_json(self) -> dict:
        return {"factors": list(self.factors)}

    @classmethod
    def from_json(cls, obj: dict) -> CriticalGroup:
        return cls(tuple(obj["factors"]))

    @classmethod
    def parse(cls, text: str) -> CriticalGroup:
        text = text.strip()
        if text in ("trivial", "", "e", "{e}"):
            return cls(())
        parts = [p.strip() for p in text.split("x")]
        fs = []
        for p in parts:
            m = re.fullmatch(r"Z_?(\d+)", p)
            if not m:
                raise InvalidInputError(f"cannot read group {text!r}")
            fs.append(int(m.group(1)))
        return from_orders(fs)


def from_orders(orders: Iterable[int]) -> CriticalGroup:
    """Invariant-factor form of a product of cyclic groups of the given orders."""
    orders = [int(x) for x in orders if int(x) != 1]
    if any(x < 1 for x in orders):
        raise InvalidInputError("cyclic orders must be positive")
    if not orders:
        return CriticalGroup(())
    snf = smith_normal_form(diagonal(orders))
    return CriticalGroup(tuple(x for x in snf.diag if x > 1))


def direct_product(*groups: CriticalGroup) -> CriticalGroup:
    return from_orders(x for g in groups for x in g.factors)


def critical_group(g: Graph, pair: ArithPair) -> CriticalGroup:
    if len(pair) != g.vertex_count:
        raise ShapeError("structure length does not match the graph")
    if not verify(g, pair.d, pair.r):
        raise InvalidInputError(f"d={pair.d} r={pair.r} is not a structure on this graph")
    diag = smith_normal_form(laplacian_matrix(g, pair.d)).diag
    if sum(1 for x in diag if x == 0) != 1:
        raise InvariantViolation(f"expected corank 1, Smith form is {diag}")
    return CriticalGroup(tuple(x for x in diag if x > 1))


def spanning_tree_count(g: Graph) -> int:
    if g.vertex_count == 1:
        return 1
    lap = laplacian_matrix(g, g.degrees())
    rest = range(1, g.vertex_count)
    return determinant(submatrix(lap, rest))


def groups_isomorphic(a: CriticalGroup, b: CriticalGroup) -> bool:
    return a.factors == b.factors


def c3_group_formula(d: Sequence[int]) -> CriticalGroup:
    """Cyclic of order 9 - sum(d) for a structure on the triangle."""
    if len(d) != 3:
        raise ShapeError("a triangle d-vector has three entries")
    if r_from_d(make_family("cycle", 3), d) is None:
        raise PreconditionError(f"d={tuple(d)} is not a structure on the triangle")
    return from_orders([9 - sum(d)])


def fan_group_decomposition(arms: Sequence[ArithPair]) -> CriticalGroup:
    """Product of the arm groups; the fan is the arms glued at one vertex."""
    c3 = make_family("cycle", 3)
    return direct_product(*(critical_group(c3, a) for a in arms))
