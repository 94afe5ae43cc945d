"""Command-line interface: ``arithgraph <command> [options]``.

Exit status is 0 on success, 1 when the input is rejected (one JSON line on
stderr naming the error kind), and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Sequence

from . import actions, cache, critical, enumeration, transforms
from .errors import ArithGraphError, InvalidInputError, PartialEnumerationError
from .graphs import FAMILIES, Graph, graph_from_json, make_c4_fan, make_family
from .linalg import format_matrix_text, parse_matrix_text, smith_normal_form
from .structures import ArithPair, d_from_r, r_from_d, verify


def int_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def arm_list(text: str) -> list[tuple[int, ...]]:
    return [int_vector(part) for part in text.split(";") if part.strip()]


def _fmt(v: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def _graph(args) -> Graph:
    if getattr(args, "graph", None):
        return graph_from_json(json.loads(Path(args.graph).read_text()))
    if args.family is None or args.n is None:
        raise InvalidInputError("give --family and --n, or --graph FILE")
    return make_family(args.family, args.n)


def _pair(g: Graph, args) -> ArithPair:
    d, r = args.d, args.r
    if d is None and r is None:
        raise InvalidInputError("give --d or --r")
    if r is not None:
        derived = d_from_r(g, r)
        if derived is None:
            raise InvalidInputError(f"r={_fmt(r)} is not an r-structure on this graph")
        if d is not None and tuple(d) != derived:
            raise InvalidInputError(f"d={_fmt(d)} does not match r={_fmt(r)}")
        return ArithPair(derived, r)
    derived_r = r_from_d(g, d)
    if derived_r is None:
        raise InvalidInputError(f"d={_fmt(d)} is not a d-structure on this graph")
    return ArithPair(d, derived_r)


def _emit_pair(out, pair: ArithPair, fmt: str, group: critical.CriticalGroup | None = None):
    if fmt == "json":
        obj = pair.to_json()
        if group is not None:
            obj["group"] = group.to_json()
        out.write(json.dumps(obj) + "\n")
    else:
        line = f"d={_fmt(pair.d)} r={_fmt(pair.r)}"
        if group is not None:
            line += f" group={group}"
        out.write(line + "\n")


def structures_csv(result: enumeration.StructureSet) -> str:
    n = result.graph.vertex_count
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"d{i}" for i in range(n)] + [f"r{i}" for i in range(n)] + ["group"])
    for p in result:
        w.writerow(list(p.d) + list(p.r) + [str(critical.critical_group(result.graph, p))])
    return buf.getvalue()


def _enumerate(args) -> enumeration.StructureSet:
    g = _graph(args)
    root = cache.cache_root(args.cache_dir)
    keyed = not args.graph and args.max_nodes is None
    if keyed:
        hit = cache.cache_lookup(root, args.family, args.n)
        if hit is not None:
            return hit
    limits = enumeration.SearchLimits(max_vertices=args.max_vertices, max_nodes=args.max_nodes)
    result = enumeration.enumerate_all(g, limits, workers=args.workers)
    if keyed:
        cache.cache_store(root, args.family, args.n, result)
    return result


def cmd_enumerate(args, out):
    try:
        result = _enumerate(args)
    except PartialEnumerationError as exc:
        out.write(exc.partial.dumps() if args.format == "json" else "")
        raise
    if args.format == "json":
        out.write(result.dumps())
    elif args.format == "csv":
        out.write(structures_csv(result))
    else:
        for p in result:
            out.write(f"{_fmt(p.d)} & {_fmt(p.r)}\n")
        out.write(f"count {len(result)}\n")


def cmd_count(args, out):
    result = _enumerate(args)
    expected = enumeration.expected_count(args.family, args.n) if args.family else None
    if args.format == "json":
        out.write(json.dumps({"count": len(result), "expected": expected}) + "\n")
    else:
        out.write(f"{len(result)}\n")


def cmd_verify(args, out):
    g = _graph(args)
    if args.d is not None and args.r is not None:
        if len(args.d) != g.vertex_count or not verify(g, args.d, args.r):
            raise InvalidInputError("pair does not satisfy (diag(d) - A) r = 0")
        pair = ArithPair(args.d, args.r)
    else:
        pair = _pair(g, args)
    _emit_pair(out, pair, args.format)


def cmd_dfromr(args, out):
    g = _graph(args)
    d = d_from_r(g, args.r)
    if d is None:
        raise InvalidInputError(f"r={_fmt(args.r)} gives no integral d")
    out.write((json.dumps({"d": list(d)}) if args.format == "json" else _fmt(d)) + "\n")


def cmd_rfromd(args, out):
    g = _graph(args)
    r = r_from_d(g, args.d)
    if r is None:
        raise InvalidInputError(f"d={_fmt(args.d)} has no positive kernel vector")
    out.write((json.dumps({"r": list(r)}) if args.format == "json" else _fmt(r)) + "\n")


def cmd_critgroup(args, out):
    g = _graph(args)
    group = critical.critical_group(g, _pair(g, args))
    out.write((json.dumps(group.to_json()) if args.format == "json" else str(group)) + "\n")


def cmd_snf(args, out):
    text = sys.stdin.read() if args.matrix == "-" else Path(args.matrix).read_text()
    res = smith_normal_form(parse_matrix_text(text))
    if args.format == "json":
        out.write(json.dumps({"diag": list(res.diag), "left": [list(r) for r in res.left],
                              "right": [list(r) for r in res.right]}) + "\n")
    else:
        out.write(" ".join(str(x) for x in res.diag) + "\n")
        if args.transforms:
            out.write(format_matrix_text(res.left))
            out.write(format_matrix_text(res.right))


def cmd_transform(args, out):
    name = args.name
    if name == "algo1":
        g = _graph(args) if (args.graph or args.family) else make_c4_fan(args.n)
        if args.r0 is None or args.order is None:
            raise InvalidInputError("algo1 needs --r0 and --order")
        steps = transforms.trace_r_subdivision(g, args.r0, args.order)
        if args.format == "json":
            out.write(json.dumps({"steps": [{"vertex": s.vertex, "support": sorted(s.support),
                                             "r": list(s.r)} for s in steps],
                                  "r": list(steps[-1].r if steps else args.r0)}) + "\n")
        else:
            for s in steps:
                out.write(f"{s.vertex} W={sorted(s.support)} r={_fmt(s.r)}\n")
            out.write(_fmt(steps[-1].r if steps else args.r0) + "\n")
        return
    g = _graph(args)
    pair = _pair(g, args)
    if name == "clique-star":
        lifted = transforms.clique_star_lift(g, args.clique or (), pair)
    elif name == "subdivide-edge":
        if not args.edge or len(args.edge) != 2:
            raise InvalidInputError("subdivide-edge needs --edge u,v")
        lifted = transforms.subdivide_edge_lift(g, args.edge[0], args.edge[1], pair)
    elif name == "pendant":
        if args.vertex is None:
            raise InvalidInputError("pendant needs --vertex")
        lifted = transforms.pendant_lift(g, args.vertex, pair)
    elif name == "add-arm":
        if args.arm is None:
            raise InvalidInputError("add-arm needs --arm r0,a,b")
        lifted = transforms.add_fan_arm(pair, args.arm)
    elif name == "smooth-arm":
        if args.k is None:
            raise InvalidInputError("smooth-arm needs --k")
        lifted = transforms.smooth_fan_arm(pair, args.k)
    elif name == "extend-fan":
        if args.k is None:
            raise InvalidInputError("extend-fan needs --k")
        lifted = transforms.extend_fan(pair, args.k)
    elif name == "complete-to-star":
        lifted = transforms.complete_to_star_lift(pair)
    elif name == "algo2":
        r = transforms.complete_r_arrow_star(pair)
        lifted = ArithPair(transforms.arrow_star_lift(pair).d, r)
    else:
        raise InvalidInputError(f"unknown transform {name!r}")
    _emit_pair(out, lifted, args.format)


def cmd_orbit(args, out):
    members = list(actions.orbit_listing(args.n, args.r))
    if args.format == "json":
        out.write(json.dumps({"canonical": list(members[0]),
                              "orbit": [list(m) for m in members]}) + "\n")
    else:
        for m in members:
            out.write(_fmt(m) + "\n")


def cmd_glue(args, out):
    c3 = make_family("cycle", 3)
    arms = []
    for r in args.arms:
        d = d_from_r(c3, r) if len(r) == 3 else None
        if d is None:
            raise InvalidInputError(f"arm {_fmt(r)} is not an r-structure on the triangle")
        arms.append(ArithPair(d, r))
    glued = enumeration.glue_c3_structures(arms)
    group = critical.critical_group(make_family("fan", len(arms)), glued)
    _emit_pair(out, glued, args.format, group)


def cmd_bound_check(args, out):
    rep = enumeration.count_lower_bound_check(args.n)
    obj = {"n": rep.n, "tuples": rep.tuples, "distinct": rep.distinct,
           "all_valid": rep.all_valid, "all_have_ones": rep.all_have_ones}
    if args.format == "json":
        out.write(json.dumps(obj) + "\n")
    else:
        out.write(" ".join(f"{k}={v}" for k, v in obj.items()) + "\n")


COMMANDS = {
    "enumerate": cmd_enumerate, "count": cmd_count, "verify": cmd_verify,
    "dfromr": cmd_dfromr, "rfromd": cmd_rfromd, "critgroup": cmd_critgroup,
    "snf": cmd_snf, "transform": cmd_transform, "orbit": cmd_orbit,
    "glue": cmd_glue, "bound-check": cmd_bound_check,
}

TRANSFORMS = ("clique-star", "subdivide-edge", "add-arm", "smooth-arm", "extend-fan",
              "pendant", "complete-to-star", "algo1", "algo2")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arithgraph",
                                     description="Arithmetical structures on small graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, graph=True, formats=("text", "json")):
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--output", "-o", help="write to this file instead of stdout")
        if graph:
            p.add_argument("--family", choices=[f for f in FAMILIES if f != "custom"])
            p.add_argument("--n", type=int)
            p.add_argument("--graph", help="JSON graph file")

    def pair_args(p):
        p.add_argument("--d", type=int_vector)
        p.add_argument("--r", type=int_vector)

    for name in ("enumerate", "count"):
        p = sub.add_parser(name)
        common(p, formats=("text", "json", "csv") if name == "enumerate" else ("text", "json"))
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--cache-dir", help=f"overrides ${cache.CACHE_ENV}")
        p.add_argument("--max-nodes", type=int)
        p.add_argument("--max-vertices", type=int, default=9)

    for name in ("verify", "critgroup"):
        p = sub.add_parser(name)
        common(p)
        pair_args(p)

    p = sub.add_parser("dfromr")
    common(p)
    p.add_argument("--r", type=int_vector, required=True)
    p = sub.add_parser("rfromd")
    common(p)
    p.add_argument("--d", type=int_vector, required=True)

    p = sub.add_parser("snf")
    common(p, graph=False)
    p.add_argument("--matrix", required=True, help="matrix file ('rows cols' header), or - for stdin")
    p.add_argument("--transforms", action="store_true", help="also print S and T")

    p = sub.add_parser("transform")
    p.add_argument("name", choices=TRANSFORMS)
    common(p)
    pair_args(p)
    p.add_argument("--clique", type=int_vector)
    p.add_argument("--edge", type=int_vector)
    p.add_argument("--vertex", type=int)
    p.add_argument("--arm", type=int_vector, help="new arm r-values r0,a,b")
    p.add_argument("--k", type=int, help="arm index (1-based)")
    p.add_argument("--r0", type=int_vector, help="partial r with zeros to fill (algo1)")
    p.add_argument("--order", type=int_vector, help="fill order of the zero vertices (algo1)")

    p = sub.add_parser("orbit")
    common(p, graph=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int_vector, required=True)

    p = sub.add_parser("glue")
    common(p, graph=False)
    p.add_argument("--arms", type=arm_list, required=True,
                   help="triangle r-structures separated by ';', e.g. '1,2,3;1,3,2'")

    p = sub.add_parser("bound-check")
    common(p, graph=False)
    p.add_argument("--n", type=int, required=True)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    buf = io.StringIO()
    try:
        COMMANDS[args.command](args, buf)
    except (ArithGraphError, IndexError, OSError, json.JSONDecodeError) as exc:
        kind = getattr(exc, "kind", type(exc).__name__)
        sys.stderr.write(json.dumps({"error": kind, "message": str(exc)}) + "\n")
        _flush(args, buf)
        return 1
    _flush(args, buf)
    return 0


def _flush(args, buf: io.StringIO):
    text = buf.getvalue()
    if not text:
        return
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    sys.exit(main())
