"""Constructions that carry arithmetical structures from one graph to another.

The basic move is the clique-star transform: delete the edges inside a clique
C and join a new vertex to every vertex of C.  New vertices are appended after
the existing ones.  Edge subdivision (|C| = 2) and pendant attachment
(|C| = 1) are special cases.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from math import prod
from typing import Iterable, Mapping, Sequence

from .enumeration import catalan, expected_count
from .errors import (InvalidInputError, InvariantViolation, MissingDataError,
                     PreconditionError, ShapeError)
from .graphs import Graph, fan_arm, make_family, make_fan
from .structures import ArithPair, d_from_r, vector_gcd, verify

log = logging.getLogger(__name__)


def _require_valid(g: Graph, pair: ArithPair, what: str = "pair"):
    if len(pair) != g.vertex_count or not verify(g, pair.d, pair.r):
        raise InvalidInputError(f"{what} d={pair.d} r={pair.r} is not valid on this graph")


def _clique(g: Graph, c: Iterable[int]) -> tuple[int, ...]:
    cs = tuple(sorted(set(c)))
    if not cs:
        raise InvalidInputError("clique must be nonempty")
    for v in cs:
        if not 0 <= v < g.vertex_count:
            raise InvalidInputError(f"vertex {v} out of range")
    if not g.is_clique(cs):
        raise InvalidInputError(f"{cs} is not a clique")
    return cs


def clique_star_graph(g: Graph, c: Iterable[int]) -> Graph:
    cs = _clique(g, c)
    inside = {(a, b) for k, a in enumerate(cs) for b in cs[k + 1:]}
    v = g.vertex_count
    edges = [e for e in g.edges if e not in inside] + [(u, v) for u in cs]
    return Graph.from_edges(v + 1, edges)


def clique_star_lift(g: Graph, c: Iterable[int], pair: ArithPair) -> ArithPair:
    """d + 1 on C, and the new vertex gets d = 1, r = sum of r over C."""
    cs = _clique(g, c)
    _require_valid(g, pair)
    d = [x + 1 if u in cs else x for u, x in enumerate(pair.d)] + [1]
    r = list(pair.r) + [sum(pair.r[u] for u in cs)]
    return ArithPair(tuple(d), tuple(r))


def subdivide_edge_graph(g: Graph, u: int, v: int) -> Graph:
    return clique_star_graph(g, (u, v))


def subdivide_edge_lift(g: Graph, u: int, v: int, pair: ArithPair) -> ArithPair:
    return clique_star_lift(g, (u, v), pair)


def pendant_graph(g: Graph, v: int) -> Graph:
    return clique_star_graph(g, (v,))


def pendant_lift(g: Graph, v: int, pair: ArithPair) -> ArithPair:
    return clique_star_lift(g, (v,), pair)


def new_vertex_first(pair: ArithPair) -> ArithPair:
    """Move the last vertex to position 0."""
    return ArithPair(pair.d[-1:] + pair.d[:-1], pair.r[-1:] + pair.r[:-1])


def _fan_n(pair: ArithPair) -> int:
    if len(pair) % 2 == 0 or len(pair) < 3:
        raise ShapeError(f"a fan structure has odd length >= 3, got {len(pair)}")
    n = (len(pair) - 1) // 2
    _require_valid(make_fan(n), pair, "fan pair")
    return n


def _check_arm(n: int, m: int):
    if not 1 <= m <= n:
        raise InvalidInputError(f"arm index {m} outside 1..{n}")


def extend_fan(pair: ArithPair, m: int) -> ArithPair:
    """Append a copy of arm m, giving a structure on one more arm."""
    n = _fan_n(pair)
    _check_arm(n, m)
    _, a, b = fan_arm(m)
    r0 = pair.r[0]
    s = pair.r[a] + pair.r[b]
    if s % r0:
        raise PreconditionError(f"r_0={r0} does not divide r_{a}+r_{b}={s}")
    d = (pair.d[0] + s // r0,) + pair.d[1:] + (pair.d[a], pair.d[b])
    r = pair.r + (pair.r[a], pair.r[b])
    return ArithPair(d, r)


def add_fan_arm(pair: ArithPair, new_arm: Sequence[int]) -> ArithPair:
    """Append an arm with r-values (r_0, a, b).

    The centre value d_0 grows by (a + b) / r_0 so the result stays balanced
    at the centre.
    """
    n = _fan_n(pair)
    if len(new_arm) != 3:
        raise ShapeError("new arm is a triple (r_0, a, b)")
    k1, a, b = (int(x) for x in new_arm)
    r0 = pair.r[0]
    if min(k1, a, b) < 1:
        raise PreconditionError("arm entries must be positive")
    if k1 != r0:
        raise PreconditionError(f"arm starts with {k1}, centre carries r_0={r0}")
    if (r0 + b) % a:
        raise PreconditionError(f"{a} does not divide r_0+{b}={r0 + b}")
    if (r0 + a) % b:
        raise PreconditionError(f"{b} does not divide r_0+{a}={r0 + a}")
    total = sum(pair.r[1:]) + a + b
    if total % r0:
        raise PreconditionError(f"r_0={r0} does not divide the arm sum {total}")
    d = (total // r0,) + pair.d[1:] + ((r0 + b) // a, (r0 + a) // b)
    out = ArithPair(d, pair.r + (a, b))
    if not verify(make_fan(n + 1), out.d, out.r):
        raise InvariantViolation(f"added arm produced an invalid structure {out}")
    return out


def smoothing_hypothesis_holds(r: Sequence[int]) -> bool:
    """r_0 | r_i + r_{i+1} for every odd i, the per-arm form of the hypothesis."""
    return all((r[i] + r[i + 1]) % r[0] == 0 for i in range(1, len(r) - 1, 2))


def smooth_fan_arm(pair: ArithPair, k: int) -> ArithPair:
    """Delete arm k, keep the centre, and renormalize r."""
    n = _fan_n(pair)
    if n < 2:
        raise PreconditionError("cannot remove the only arm")
    _check_arm(n, k)
    _, a, b = fan_arm(k)
    r = [x for i, x in enumerate(pair.r) if i not in (a, b)]
    if sum(r[1:]) % r[0]:
        raise PreconditionError(
            f"r_0={r[0]} does not divide the remaining arm sum {sum(r[1:])}")
    if not smoothing_hypothesis_holds(pair.r):
        log.info("per-arm divisibility fails for r=%s; centre divisibility still holds",
                 pair.r)
    g = vector_gcd(r)
    r = tuple(x // g for x in r)
    d = d_from_r(make_fan(n - 1), r)
    if d is None:
        raise InvariantViolation(f"smoothing produced an invalid vector {r}")
    return ArithPair(d, r, normalized=g != 1)


def star_pendant_lift(pair: ArithPair) -> ArithPair:
    """Structure on S_n from one on S_{n-1}: a new leaf hangs off the centre."""
    if len(pair) < 2:
        raise ShapeError("a star has at least two vertices")
    star = make_family("star", len(pair) - 1)
    return clique_star_lift(star, (0,), pair)


def complete_to_star_lift(pair: ArithPair) -> ArithPair:
    """Clique-star of all of K_n, relabelled so the new centre is vertex 0."""
    kn = make_family("complete", len(pair))
    return new_vertex_first(clique_star_lift(kn, range(len(pair)), pair))


def reachable_support(g: Graph, r: Sequence[int], u: int) -> frozenset:
    """W_u(r): vertices w != u with r_w != 0 joined to u through zero vertices."""
    if len(r) != g.vertex_count:
        raise ShapeError("r length does not match the graph")
    g.neighbors(u)
    found = set()
    seen = {u}
    queue = deque([u])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w in seen:
                continue
            seen.add(w)
            if r[w] != 0:
                found.add(w)
            else:
                queue.append(w)
    return frozenset(found)


@dataclass(frozen=True)
class VertexOrder:
    """theta, stored as the sequence theta^{-1}(1), theta^{-1}(2), ..."""

    sequence: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sequence", tuple(int(v) for v in self.sequence))
        if len(set(self.sequence)) != len(self.sequence):
            raise InvalidInputError("vertex order repeats a vertex")

    @classmethod
    def from_mapping(cls, theta: Mapping[int, int]) -> VertexOrder:
        if sorted(theta.values()) != list(range(1, len(theta) + 1)):
            raise InvalidInputError("theta must map onto 1..|U|")
        return cls(tuple(sorted(theta, key=theta.__getitem__)))

    @property
    def domain(self) -> frozenset:
        return frozenset(self.sequence)

    def position(self, v: int) -> int:
        return self.sequence.index(v) + 1


@dataclass(frozen=True)
class SubdivisionStep:
    vertex: int
    support: frozenset
    r: tuple[int, ...]


def trace_r_subdivision(g_target: Graph, r0: Sequence[int],
                        order: VertexOrder | Sequence[int]) -> list[SubdivisionStep]:
    """Fill the zero entries of r0 one at a time in the given order."""
    if not isinstance(order, VertexOrder):
        order = VertexOrder(tuple(order))
    if len(r0) != g_target.vertex_count:
        raise ShapeError("r0 length does not match the graph")
    if any(x < 0 for x in r0):
        raise InvalidInputError("r0 entries must be nonnegative")
    zeros = frozenset(v for v, x in enumerate(r0) if x == 0)
    if zeros != order.domain:
        raise InvalidInputError(
            f"order covers {sorted(order.domain)}, zero set is {sorted(zeros)}")
    if len(zeros) == len(r0):
        raise InvalidInputError("r0 has empty support")
    r = list(r0)
    steps = []
    for u in order.sequence:
        w = reachable_support(g_target, r, u)
        r[u] = sum(r[x] for x in w)
        steps.append(SubdivisionStep(u, w, tuple(r)))
    return steps


def complete_r_subdivision(g_target: Graph, r0: Sequence[int],
                           order: VertexOrder | Sequence[int]) -> tuple[int, ...]:
    steps = trace_r_subdivision(g_target, r0, order)
    return steps[-1].r if steps else tuple(r0)


def arm_cliques(n: int) -> list[tuple[int, int, int]]:
    return [fan_arm(i) for i in range(1, n + 1)]


def complete_r_arrow_star(fan_pair: ArithPair, cliques: Sequence[Sequence[int]] | None = None,
                          order: VertexOrder | Sequence[int] | None = None) -> tuple[int, ...]:
    """r on the arrow star: spoke 2n+j carries the r-sum of arm j.

    ``order`` is accepted for interface symmetry with the subdivision
    completion; each spoke depends only on its own arm, so it has no effect.
    """
    n = _fan_n(fan_pair)
    arms = arm_cliques(n)
    if cliques is not None and sorted(tuple(sorted(c)) for c in cliques) != arms:
        raise InvalidInputError("cliques must be the triangular arms of the fan")
    return fan_pair.r + tuple(sum(fan_pair.r[v] for v in arm) for arm in arms)


def arrow_star_lift(fan_pair: ArithPair) -> ArithPair:
    """Full (d, r) on the arrow star via one clique-star per arm."""
    n = _fan_n(fan_pair)
    g = make_fan(n)
    pair = fan_pair
    for arm in arm_cliques(n):
        pair = clique_star_lift(g, arm, pair)
        g = clique_star_graph(g, arm)
    return pair


def subdivision_count_bound(g: Graph, multiplicities: Mapping[tuple[int, int], int] | Sequence[int],
                            count: int | None = None) -> int:
    """Lower bound on the structure count after subdividing edge e n_e times.

    With A = |Arith(G)| and P the product of Catalan numbers C_{n_e}, the
    bound is (A - 1) * P + P + 1; with no subdivision at all it is just A.
    """
    ns = list(multiplicities.values()) if isinstance(multiplicities, Mapping) else list(multiplicities)
    if isinstance(multiplicities, Mapping):
        for e in multiplicities:
            if not g.has_edge(*e):
                raise InvalidInputError(f"{e} is not an edge")
    if any(x < 0 for x in ns):
        raise InvalidInputError("subdivision counts must be nonnegative")
    if count is None:
        count = expected_count(g.family, g.n) if g.n is not None else None
    if count is None:
        raise MissingDataError("structure count of the base graph is unknown")
    if not any(ns):
        return count
    p = prod(catalan(x) for x in ns)
    return (count - 1) * p + p + 1
