"""Tabulated structures shipped as JSON under ``arithgraph/data``."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from itertools import permutations

from .critical import CriticalGroup
from .errors import CorruptFixtureError, InvalidInputError, MissingFixtureError
from .graphs import Graph, graph_from_json
from .structures import ArithPair, d_from_r, verify

FIXTURE_NAMES = ("c3_table1", "s4_partial", "f2_example_rs", "k3_to_s3")


@dataclass(frozen=True)
class FixtureRow:
    d: tuple[int, ...]
    r: tuple[int, ...]
    group: CriticalGroup | None
    mult: int
    suspect: bool = False
    source: ArithPair | None = None

    @property
    def pair(self) -> ArithPair:
        return ArithPair(self.d, self.r)


@dataclass(frozen=True)
class FixtureTable:
    name: str
    citation: str
    graph: Graph
    rows: tuple[FixtureRow, ...]

    def __len__(self):
        return len(self.rows)

    def pairs(self, include_suspect: bool = True) -> list[ArithPair]:
        return [row.pair for row in self.rows if include_suspect or not row.suspect]


def _parse_row(g: Graph, raw: dict) -> FixtureRow:
    r = tuple(raw["r"])
    if raw.get("d") is None:
        d = d_from_r(g, r)
        if d is None:
            raise CorruptFixtureError(f"r={r} has no matching d")
    else:
        d = tuple(raw["d"])
    if not verify(g, d, r):
        raise CorruptFixtureError(f"row d={d} r={r} does not verify")
    group = raw.get("group")
    src = raw.get("source")
    return FixtureRow(
        d, r,
        None if group is None else CriticalGroup(tuple(group)),
        int(raw.get("mult", 1)),
        bool(raw.get("suspect", False)),
        None if src is None else ArithPair.from_json(src),
    )


def parse_fixture(obj: dict) -> FixtureTable:
    try:
        g = graph_from_json(obj["graph"])
        rows = tuple(_parse_row(g, raw) for raw in obj["rows"])
        return FixtureTable(obj["name"], obj["citation"], g, rows)
    except CorruptFixtureError:
        raise
    except (KeyError, TypeError, ValueError, InvalidInputError) as exc:
        raise CorruptFixtureError(f"malformed fixture: {exc}") from exc


def load_fixture(name: str) -> FixtureTable:
    if name not in FIXTURE_NAMES:
        raise MissingFixtureError(f"no fixture named {name!r}")
    path = resources.files("arithgraph") / "data" / f"{name}.json"
    try:
        obj = json.loads(path.read_text())
    except FileNotFoundError as exc:
        raise MissingFixtureError(f"fixture file for {name!r} is missing") from exc
    except json.JSONDecodeError as exc:
        raise CorruptFixtureError(f"fixture {name!r} is not valid JSON: {exc}") from exc
    return parse_fixture(obj)


def leaf_permutations(pair: ArithPair) -> set[ArithPair]:
    """All structures obtained by permuting the leaves of a star (centre at 0)."""
    leaves = list(zip(pair.d[1:], pair.r[1:]))
    out = set()
    for perm in set(permutations(leaves)):
        out.add(ArithPair((pair.d[0],) + tuple(x for x, _ in perm),
                          (pair.r[0],) + tuple(y for _, y in perm)))
    return out


@dataclass(frozen=True)
class AuditLine:
    index: int
    declared: int
    computed: int
    suspect: bool

    @property
    def agrees(self) -> bool:
        return self.declared == self.computed


@dataclass(frozen=True)
class MultiplicityAudit:
    lines: tuple[AuditLine, ...]
    declared_total: int
    expanded_distinct: int
    overlapping_rows: tuple[tuple[int, int], ...]
    expanded: frozenset

    @property
    def all_agree(self) -> bool:
        return all(line.agrees for line in self.lines)


def multiplicity_audit(table: FixtureTable) -> MultiplicityAudit:
    """Compare each row's declared count with its number of leaf permutations.

    Also reports pairs of rows whose permutation classes coincide, since such
    rows would be double counted in the declared total.
    """
    lines = []
    classes = []
    for i, row in enumerate(table.rows):
        cls = leaf_permutations(row.pair)
        classes.append(cls)
        lines.append(AuditLine(i, row.mult, len(cls), row.suspect))
    overlaps = tuple((i, j) for i in range(len(classes)) for j in range(i + 1, len(classes))
                     if classes[i] & classes[j])
    union = frozenset().union(*classes)
    return MultiplicityAudit(tuple(lines), sum(r.mult for r in table.rows), len(union),
                             overlaps, union)
