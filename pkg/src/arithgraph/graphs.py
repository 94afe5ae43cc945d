"""Graph families with fixed vertex labelings.

Vertex 0 is always the distinguished vertex: the common vertex of the fan
(n triangles glued at one point, a.k.a. the friendship or Dutch windmill
graph), the centre of a star.  Derived graphs (arrow star, C4-fan, corona)
keep the fan's indices and append new vertices in construction order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidInputError, InvalidParameterError

FAMILIES = (
    "path", "cycle", "star", "complete", "fan",
    "arrow_star", "c4_fan", "corona", "custom",
)


@dataclass(frozen=True)
class Graph:
    """Immutable simple connected graph on vertices ``0..vertex_count-1``."""

    vertex_count: int
    edges: frozenset
    family: str = field(default="custom", compare=False)
    n: int | None = field(default=None, compare=False)
    _adj: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.vertex_count < 1:
            raise InvalidParameterError("a graph needs at least one vertex")
        norm = set()
        for e in self.edges:
            i, j = e
            if i == j:
                raise InvalidInputError(f"self-loop at vertex {i}")
            if not (0 <= i < self.vertex_count and 0 <= j < self.vertex_count):
                raise InvalidInputError(f"edge {e} out of range")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))
        adj = [set() for _ in range(self.vertex_count)]
        for i, j in norm:
            adj[i].add(j)
            adj[j].add(i)
        object.__setattr__(self, "_adj", tuple(frozenset(s) for s in adj))
        if not self._connected():
            raise InvalidInputError("graph is not connected")

    def _connected(self) -> bool:
        seen = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for u in self._adj[v]:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        return len(seen) == self.vertex_count

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Sequence[int]],
                   family: str = "custom", n: int | None = None) -> Graph:
        return cls(vertex_count, frozenset(tuple(e) for e in edges), family, n)

    @cached_property
    def adjacency(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(
            tuple(u in self._adj[v] for u in range(self.vertex_count))
            for v in range(self.vertex_count)
        )

    def adjacency_matrix(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.adjacency]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self._adj)

    def neighbors(self, v: int) -> frozenset:
        if not 0 <= v < self.vertex_count:
            raise IndexError(f"vertex {v} out of range 0..{self.vertex_count - 1}")
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbors(u)

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.has_edge(a, b) for k, a in enumerate(vs) for b in vs[k + 1:])

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def to_json(self) -> dict:
        if self.family not in ("custom", None) and self.n is not None:
            return {"family": self.family, "n": self.n}
        return {"vertices": self.vertex_count,
                "edges": [list(e) for e in self.sorted_edges()]}


def graph_from_json(obj: dict) -> Graph:
    if "family" in obj:
        return make_family(obj["family"], int(obj["n"]))
    if "vertices" in obj and "edges" in obj:
        return Graph.from_edges(int(obj["vertices"]), obj["edges"])
    raise InvalidInputError("graph JSON needs either family/n or vertices/edges")


def fan_arm(i: int) -> tuple[int, int, int]:
    """Vertex triple of the i-th triangular arm (1-based)."""
    return (0, 2 * i - 1, 2 * i)


def make_fan(n: int) -> Graph:
    if n < 1:
        raise InvalidParameterError("fan needs n >= 1 arms")
    edges = []
    for i in range(1, n + 1):
        _, a, b = fan_arm(i)
        edges += [(0, a), (0, b), (a, b)]
    return Graph.from_edges(2 * n + 1, edges, "fan", n)


def make_arrow_star(n: int) -> Graph:
    # clique-star of every arm: arm i gets spoke 2n+i joined to 0, 2i-1, 2i
    if n < 1:
        raise InvalidParameterError("arrow star needs n >= 1")
    edges = []
    for i in range(1, n + 1):
        u = 2 * n + i
        edges += [(u, 0), (u, 2 * i - 1), (u, 2 * i)]
    return Graph.from_edges(3 * n + 1, edges, "arrow_star", n)


def make_c4_fan(n: int) -> Graph:
    # outer edge (2i-1, 2i) of arm i subdivided by vertex 2n+i
    if n < 1:
        raise InvalidParameterError("C4-fan needs n >= 1")
    edges = []
    for i in range(1, n + 1):
        a, b, u = 2 * i - 1, 2 * i, 2 * n + i
        edges += [(0, a), (0, b), (a, u), (u, b)]
    return Graph.from_edges(3 * n + 1, edges, "c4_fan", n)


def c4_fan_display_order(n: int) -> list[int]:
    """Vertex ids in the interleaved order v0, v1, u1, v2, v3, u2, v4, ...

    Each subdivision vertex is listed between the two arm vertices it splits.
    """
    order = [0]
    for i in range(1, n + 1):
        order += [2 * i - 1, 2 * n + i, 2 * i]
    return order


def make_corona_fan(n: int) -> Graph:
    if n < 1:
        raise InvalidParameterError("corona needs n >= 1")
    base = make_fan(n)
    m = base.vertex_count
    edges = list(base.edges) + [(v, m + v) for v in range(m)]
    return Graph.from_edges(2 * m, edges, "corona", n)


def make_family(tag: str, n: int) -> Graph:
    if tag == "fan":
        return make_fan(n)
    if tag == "arrow_star":
        return make_arrow_star(n)
    if tag == "c4_fan":
        return make_c4_fan(n)
    if tag == "corona":
        return make_corona_fan(n)
    if tag == "path":
        if n < 1:
            raise InvalidParameterError("path needs n >= 1")
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], "path", n)
    if tag == "cycle":
        if n < 3:
            raise InvalidParameterError("cycle needs n >= 3")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], "cycle", n)
    if tag == "star":
        if n < 1:
            raise InvalidParameterError("star needs n >= 1 leaves")
        return Graph.from_edges(n + 1, [(0, i) for i in range(1, n + 1)], "star", n)
    if tag == "complete":
        if n < 3:
            raise InvalidParameterError("complete graph needs n >= 3")
        return Graph.from_edges(
            n, [(i, j) for i in range(n) for j in range(i + 1, n)], "complete", n)
    raise InvalidParameterError(f"unknown family {tag!r}")


def neighbors(g: Graph, v: int) -> frozenset:
    return g.neighbors(v)
