"""Exhaustive enumeration of arithmetical structures on small graphs.

The search assigns d one vertex at a time.  For an assigned set P and the
remaining set R it keeps the Schur complement of M_PP in M = diag(d) - A,
written as diag(d_R) - diag(c) - W with W >= 0 off the diagonal.  If j is the
vertex of R carrying the largest r, row j of the Schur system gives

    c_j < d_j <= c_j + sum_{i in R, i != j} W_ji

so every value range is finite.  Vertices are visited in order of decreasing
r (ties by index), which is checked on acceptance so each structure appears
exactly once.  Along the way r_P = K r_R with K = M_PP^{-1} A_PR >= 0, and a
vertex already placed must satisfy r_p >= max r_R, i.e. row sums of K >= 1.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import comb, gcd, lcm
from typing import Iterable, Iterator, Sequence

from .errors import InvariantViolation, PartialEnumerationError, SizeLimitError
from .graphs import Graph, graph_from_json, make_fan, make_family
from .linalg import generalized_laplacian, is_almost_nonsingular_m_matrix
from .structures import ArithPair, d_from_r, r_from_d, vector_gcd, verify

ALGORITHM_VERSION = "1"

BRUTEFORCE_MAX_VERTICES = 7
BRUTEFORCE_MAX_R = 12

STAR_COUNTS = (1, 2, 14, 263, 13462, 2104021)


@dataclass(frozen=True)
class SearchLimits:
    max_vertices: int = 9
    max_nodes: int | None = None


@dataclass(frozen=True)
class StructureSet:
    graph: Graph
    structures: tuple[ArithPair, ...]
    complete: bool = True

    def __post_init__(self):
        object.__setattr__(self, "structures", tuple(sorted(set(self.structures))))

    def __len__(self):
        return len(self.structures)

    def __iter__(self) -> Iterator[ArithPair]:
        return iter(self.structures)

    def __contains__(self, item) -> bool:
        return item in set(self.structures)

    def pairs(self) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
        return {(p.d, p.r) for p in self.structures}

    def to_json(self) -> dict:
        return {
            "graph": self.graph.to_json(),
            "complete": self.complete,
            "count": len(self.structures),
            "structures": [p.to_json() for p in self.structures],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, obj: dict) -> StructureSet:
        g = graph_from_json(obj["graph"])
        pairs = tuple(ArithPair.from_json(p) for p in obj["structures"])
        if len(pairs) != obj["count"]:
            raise ValueError("count field disagrees with the structure list")
        return cls(g, pairs, bool(obj["complete"]))


class _NodeBudget:
    def __init__(self, max_nodes: int | None):
        self.left = max_nodes
        self.exhausted = False

    def take(self) -> bool:
        if self.left is None:
            return True
        if self.left <= 0:
            self.exhausted = True
            return False
        self.left -= 1
        return True


@dataclass
class _State:
    order: list[int]
    d: list[int]
    remaining: list[int]
    c: dict[int, Fraction]
    w: dict[int, dict[int, Fraction]]
    k: dict[int, dict[int, Fraction]] = field(default_factory=dict)


def _root_state(g: Graph) -> _State:
    n = g.vertex_count
    w = {a: {b: Fraction(1) for b in g.neighbors(a)} for a in range(n)}
    return _State([], [0] * n, list(range(n)), {a: Fraction(0) for a in range(n)}, w)


def _value_range(st: _State, j: int) -> range:
    c = st.c[j]
    if len(st.remaining) == 1:
        if c.denominator == 1 and c >= 1:
            return range(int(c), int(c) + 1)
        return range(0)
    hi = c + sum((x for i, x in st.w[j].items() if i != j), Fraction(0))
    lo = c.numerator // c.denominator + 1
    return range(max(lo, 1), hi.numerator // hi.denominator + 1)


def _child(st: _State, j: int, x: int) -> _State | None:
    rest = [v for v in st.remaining if v != j]
    d = list(st.d)
    d[j] = x
    if not rest:
        return _State(st.order + [j], d, rest, st.c, st.w, st.k)
    piv = x - st.c[j]
    wj = st.w[j]
    c = {a: st.c[a] + wj.get(a, 0) ** 2 / piv for a in rest}
    w: dict[int, dict[int, Fraction]] = {}
    for a in rest:
        row = {b: v for b, v in st.w[a].items() if b != j}
        waj = wj.get(a)
        if waj:
            for b in rest:
                if b != a and wj.get(b):
                    row[b] = row.get(b, 0) + waj * wj[b] / piv
        w[a] = row
    k: dict[int, dict[int, Fraction]] = {}
    for p, row in st.k.items():
        kpj = row.get(j, 0)
        new = {i: v for i, v in row.items() if i != j}
        if kpj:
            for i, wji in wj.items():
                if i != j and i in c:
                    new[i] = new.get(i, 0) + kpj * wji / piv
        if sum(new.values(), Fraction(0)) < 1:
            return None
        k[p] = new
    krow = {i: v / piv for i, v in wj.items() if i in c}
    if sum(krow.values(), Fraction(0)) < 1:
        return None
    k[j] = krow
    return _State(st.order + [j], d, rest, c, w, k)


def _leaf_r(g: Graph, st: _State) -> tuple[int, ...]:
    # with one vertex j left, r_p = K_pj * r_j; take r_j = 1 and clear denominators
    j = st.order[-1]
    vals = {p: row.get(j, Fraction(0)) for p, row in st.k.items()}
    vals[j] = Fraction(1)
    den = lcm(*(v.denominator for v in vals.values()))
    return primitive_tuple([int(vals[v] * den) for v in range(g.vertex_count)])


def _accept(g: Graph, st: _State) -> ArithPair | None:
    d = tuple(st.d)
    r = _leaf_r(g, st) if st.k else (1,)
    canonical = sorted(range(g.vertex_count), key=lambda v: (-r[v], v))
    if canonical != st.order or min(r) < 1:
        return None
    if not verify(g, d, r):
        return None
    if not is_almost_nonsingular_m_matrix(generalized_laplacian(g.adjacency_matrix(), d)):
        return None
    return ArithPair(d, r)


def _search(g: Graph, st: _State, budget: _NodeBudget, out: list[ArithPair]):
    if not budget.take():
        return
    if not st.remaining:
        pair = _accept(g, st)
        if pair is not None:
            out.append(pair)
        return
    for j in st.remaining:
        for x in _value_range(st, j):
            child = _child(st, j, x)
            if child is not None:
                _search(g, child, budget, out)
            if budget.exhausted:
                return


def _first_level(g: Graph) -> list[tuple[int, int]]:
    st = _root_state(g)
    return [(j, x) for j in st.remaining for x in _value_range(st, j)]


def _run_subtree(args) -> tuple[list[ArithPair], bool]:
    g, j, x, max_nodes = args
    budget = _NodeBudget(max_nodes)
    out: list[ArithPair] = []
    child = _child(_root_state(g), j, x)
    if child is not None:
        _search(g, child, budget, out)
    return out, budget.exhausted


def enumerate_all(g: Graph, limits: SearchLimits | None = None,
                  workers: int = 1) -> StructureSet:
    """Every arithmetical structure on g, sorted by (d, r).

    With workers > 1 the first-level branches run in separate processes; the
    node budget, if any, then applies to each branch separately.
    """
    limits = limits or SearchLimits()
    if g.vertex_count > limits.max_vertices:
        raise SizeLimitError(
            f"graph has {g.vertex_count} vertices, cap is {limits.max_vertices}")
    if workers > 1:
        tasks = [(g, j, x, limits.max_nodes) for j, x in _first_level(g)]
        found: list[ArithPair] = []
        exhausted = False
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part, ex in pool.map(_run_subtree, tasks):
                found += part
                exhausted = exhausted or ex
    else:
        budget = _NodeBudget(limits.max_nodes)
        found = []
        _search(g, _root_state(g), budget, found)
        exhausted = budget.exhausted
    if exhausted:
        partial = StructureSet(g, tuple(found), complete=False)
        raise PartialEnumerationError(
            f"node limit reached after {len(partial)} structures", partial)
    return StructureSet(g, tuple(found), complete=True)


def enumerate_r_bruteforce(g: Graph, r_max: int) -> StructureSet:
    """All structures with max(r) <= r_max, by exhaustive scan of r-vectors.

    Complete only relative to the cap on r.
    """
    n = g.vertex_count
    if n > BRUTEFORCE_MAX_VERTICES:
        raise SizeLimitError(f"brute force capped at {BRUTEFORCE_MAX_VERTICES} vertices")
    if r_max > BRUTEFORCE_MAX_R:
        raise SizeLimitError(f"brute force capped at r_max={BRUTEFORCE_MAX_R}")
    found = []
    for r in product(range(1, r_max + 1), repeat=n):
        if vector_gcd(r) != 1:
            continue
        d = d_from_r(g, r)
        if d is not None:
            found.append(ArithPair(d, r))
    return StructureSet(g, tuple(found), complete=False)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def expected_count(family: str, n: int) -> int | None:
    if family == "path":
        return catalan(n - 1) if n >= 2 else None
    if family == "cycle":
        return comb(2 * n - 1, n - 1) if n >= 3 else None
    if family == "star":
        return STAR_COUNTS[n - 1] if 1 <= n <= len(STAR_COUNTS) else None
    return None


def _sorted_unit_sums(target: Fraction, terms: int, lo: int) -> Iterator[tuple[int, ...]]:
    # nondecreasing x_1 <= ... <= x_terms, all >= lo, with sum of 1/x_i == target
    if terms == 1:
        if target.numerator == 1 and target.denominator >= lo:
            yield (target.denominator,)
        return
    start = max(lo, -(-target.denominator // target.numerator))
    stop = (terms * target.denominator) // target.numerator
    for x in range(start, stop + 1):
        rest = target - Fraction(1, x)
        if rest > 0:
            for tail in _sorted_unit_sums(rest, terms - 1, x):
                yield (x,) + tail


def egyptian_solutions(n: int) -> list[tuple[int, ...]]:
    """All (d_0, d_1, ..., d_n) of positive ints with d_0 = sum 1/d_i."""
    out = set()
    for d0 in range(1, n + 1):
        for leaves in _sorted_unit_sums(Fraction(d0), n, 1):
            for perm in set(permutations(leaves)):
                out.add((d0,) + perm)
    return sorted(out)


def glue_c3_structures(arms: Sequence[ArithPair]) -> ArithPair:
    """Fan structure built from one cycle structure per triangular arm.

    Arm i is read as (r at the centre, r at 2i-1, r at 2i).  Arms are scaled
    to a common centre value before assembly, then the result is made
    primitive.
    """
    if not arms:
        raise ValueError("need at least one arm")
    r0 = lcm(*(a.r[0] for a in arms))
    r = [r0]
    for a in arms:
        s = r0 // a.r[0]
        r += [a.r[1] * s, a.r[2] * s]
    g = vector_gcd(r)
    r = [x // g for x in r]
    d = d_from_r(make_fan(len(arms)), r)
    if d is None:
        raise InvariantViolation(f"gluing produced an invalid fan vector {r}")
    return ArithPair(d, tuple(r), normalized=g != 1 or r0 != arms[0].r[0])


@dataclass(frozen=True)
class GluingReport:
    n: int
    tuples: int
    distinct: int
    all_valid: bool
    all_have_ones: bool
    structures: tuple[ArithPair, ...]


def c3_structures() -> tuple[ArithPair, ...]:
    return enumerate_all(make_family("cycle", 3)).structures


def all_gluings(n: int) -> Iterator[tuple[tuple[ArithPair, ...], ArithPair]]:
    arms = c3_structures()
    for combo in product(arms, repeat=n):
        yield combo, glue_c3_structures(combo)


def count_lower_bound_check(n: int) -> GluingReport:
    if not 1 <= n <= 3:
        raise SizeLimitError("gluing check runs for n = 1, 2, 3")
    fan = make_fan(n)
    glued = [p for _, p in all_gluings(n)]
    valid = all(r_from_d(fan, p.d) == p.r for p in glued)
    ones = all(1 in p.r for p in glued)
    distinct = tuple(sorted(set(glued)))
    return GluingReport(n, len(glued), len(distinct), valid, ones, distinct)


def filter_structures(structs: Iterable[ArithPair], vertex: int, d_value: int) -> list[ArithPair]:
    return [p for p in structs if p.d[vertex] == d_value]


def primitive_tuple(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v)
