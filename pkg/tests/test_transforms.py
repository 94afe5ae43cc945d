from __future__ import annotations

import networkx as nx
import pytest

from arithgraph.enumeration import all_gluings, count_lower_bound_check, enumerate_all
from arithgraph.errors import (InvalidInputError, MissingDataError, PreconditionError)
from arithgraph.fixtures import load_fixture
from arithgraph.graphs import (c4_fan_display_order, fan_arm, make_arrow_star, make_c4_fan,
                               make_family, make_fan)
from arithgraph.structures import (ArithPair, d_from_r, fan_divisibility_check,
                                   laplacian_structure, verify)
from arithgraph.transforms import (VertexOrder, add_fan_arm, arrow_star_lift,
                                   clique_star_graph, clique_star_lift, complete_r_arrow_star,
                                   complete_r_subdivision, complete_to_star_lift, extend_fan,
                                   new_vertex_first, pendant_graph, pendant_lift,
                                   reachable_support, smooth_fan_arm, smoothing_hypothesis_holds,
                                   star_pendant_lift, subdivide_edge_graph,
                                   subdivision_count_bound, trace_r_subdivision)

K3 = make_family("complete", 3)
F2 = make_fan(2)


def fan_pair(r):
    n = (len(r) - 1) // 2
    return ArithPair(d_from_r(make_fan(n), r), r)


def nxg(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edges)
    return h


def test_clique_star_graphs():
    s3 = clique_star_graph(K3, (0, 1, 2))
    assert nx.is_isomorphic(nxg(s3), nxg(make_family("star", 3)))
    assert s3.neighbors(3) == {0, 1, 2}
    g = F2
    for i in (1, 2):
        g = clique_star_graph(g, fan_arm(i))
    assert nx.is_isomorphic(nxg(g), nxg(make_arrow_star(2)))
    p = pendant_graph(F2, 3)
    assert p.vertex_count == 6 and p.neighbors(5) == {3}
    with pytest.raises(InvalidInputError):
        clique_star_graph(F2, (1, 3))


def test_clique_star_lift_examples():
    lift = clique_star_lift(K3, (0, 1, 2), ArithPair((2, 2, 2), (1, 1, 1)))
    assert lift == ArithPair((3, 3, 3, 1), (1, 1, 1, 3))
    lift = clique_star_lift(K3, (0, 1, 2), ArithPair((5, 2, 1), (1, 2, 3)))
    assert lift == ArithPair((6, 3, 2, 1), (1, 2, 3, 6))
    p = fan_pair((1, 2, 3, 2, 3))
    leaf = pendant_lift(F2, 2, p)
    assert leaf.d[2] == p.d[2] + 1 and leaf.d[-1] == 1 and leaf.r[-1] == p.r[2]
    with pytest.raises(InvalidInputError):
        clique_star_lift(K3, (0, 1, 2), ArithPair((2, 2, 2), (1, 2, 3)))


def test_clique_star_lift_is_bijective_onto_d_one(c3):
    s3 = clique_star_graph(K3, (0, 1, 2))
    lifted = {clique_star_lift(K3, (0, 1, 2), p) for p in c3}
    target = {p for p in enumerate_all(s3) if p.d[3] == 1}
    assert lifted == target


def test_arm_clique_lift_is_bijective_onto_d_one(f2):
    target_graph = clique_star_graph(F2, fan_arm(1))
    lifted = {clique_star_lift(F2, fan_arm(1), p) for p in f2}
    target = {p for p in enumerate_all(target_graph) if p.d[-1] == 1}
    assert lifted == target


def test_every_transform_output_verifies(c3, f2, enumerated):
    for p in c3:
        for c in [(0, 1, 2), (0, 1), (2,)]:
            g = clique_star_graph(K3, c)
            q = clique_star_lift(K3, c, p)
            assert verify(g, q.d, q.r)
        q = complete_to_star_lift(p)
        assert verify(make_family("star", 3), q.d, q.r)
    for n in (2, 3):
        star = make_family("star", n + 1)
        for p in enumerated("star", n):
            q = star_pendant_lift(p)
            assert verify(star, q.d, q.r)
    for p in f2:
        q = arrow_star_lift(p)
        assert verify(make_arrow_star(2), q.d, q.r)
        assert q.r == complete_r_arrow_star(p)
        assert d_from_r(make_arrow_star(2), complete_r_arrow_star(p)) is not None


def test_subdivision_is_two_clique():
    g = subdivide_edge_graph(make_c4_fan(3), 6, 9)
    r = complete_r_subdivision(g, (1,) * 10 + (0,), [10])
    assert r == (1,) * 10 + (2,)
    d = d_from_r(g, r)
    assert d[6] == 3 and d[9] == 3 and d[10] == 1
    disp = [d[v] for v in c4_fan_display_order(3)]
    assert disp == [6, 2, 2, 2, 2, 2, 2, 2, 3, 3]


def test_extend_fan():
    out = extend_fan(fan_pair((1, 2, 3, 3, 2)), 1)
    assert out.r == (1, 2, 3, 3, 2, 2, 3) and out.d == (15, 2, 1, 1, 2, 2, 1)
    lap = extend_fan(laplacian_structure(F2), 1)
    assert lap == laplacian_structure(make_fan(3))
    out = extend_fan(fan_pair((1, 2, 3, 2, 3)), 2)
    assert out.r == (1, 2, 3, 2, 3, 2, 3) and out.d[0] == 15
    for m in (1, 2):
        with pytest.raises(PreconditionError):
            extend_fan(fan_pair((22, 14, 6, 1, 1)), m)


def test_add_fan_arm():
    base = fan_pair((1, 2, 3, 3, 2))
    assert add_fan_arm(base, (1, 1, 1)).r == (1, 2, 3, 3, 2, 1, 1)
    assert add_fan_arm(base, (1, 1, 2)).r == (1, 2, 3, 3, 2, 1, 2)
    assert add_fan_arm(base, (1, 2, 1)).r == (1, 2, 3, 3, 2, 2, 1)
    for arm in [(2, 1, 1), (1, 2, 2), (1, 0, 1)]:
        with pytest.raises(PreconditionError):
            add_fan_arm(base, arm)
    # centre value has to move with the new arm
    assert add_fan_arm(base, (1, 1, 1)).d[0] == base.d[0] + 2


def test_smooth_fan_arm():
    from arithgraph.enumeration import glue_c3_structures
    c3 = make_family("cycle", 3)
    arms = [ArithPair(d_from_r(c3, r), r) for r in [(1, 1, 1), (1, 2, 3), (1, 3, 2)]]
    f3 = glue_c3_structures(arms)
    assert smooth_fan_arm(f3, 1).r == (1, 2, 3, 3, 2)
    assert smooth_fan_arm(laplacian_structure(F2), 2) == laplacian_structure(make_fan(1))
    assert smooth_fan_arm(fan_pair((1, 2, 3, 1, 1)), 1).r == (1, 1, 1)
    with pytest.raises(PreconditionError):
        smooth_fan_arm(laplacian_structure(make_fan(1)), 1)
    # r = (2,3,1,2,2): dropping the second arm leaves 3+1 = 4, divisible by 2
    out = smooth_fan_arm(fan_pair((2, 3, 1, 2, 2)), 2)
    assert out.r == (2, 3, 1)
    for k in (1, 2):
        with pytest.raises(PreconditionError):
            smooth_fan_arm(fan_pair((22, 14, 6, 1, 1)), k)


def test_extend_then_smooth_is_identity(f2):
    for p in f2:
        for m in (1, 2):
            try:
                up = extend_fan(p, m)
            except PreconditionError:
                continue
            assert smooth_fan_arm(up, 3) == p


def test_smoothing_hypothesis_flag():
    assert smoothing_hypothesis_holds((1, 2, 3, 3, 2))
    assert smoothing_hypothesis_holds((6, 9, 3, 2, 4))
    assert not smoothing_hypothesis_holds((22, 14, 6, 1, 1))


def test_per_arm_condition_singles_out_gluings(f2):
    glued = set(count_lower_bound_check(2).structures)
    assert {p for p in f2 if smoothing_hypothesis_holds(p.r)} == glued


def test_star_pendant_lift():
    assert star_pendant_lift(ArithPair((1, 2, 2), (2, 1, 1))) == ArithPair((2, 2, 2, 1), (2, 1, 1, 2))
    assert star_pendant_lift(ArithPair((2, 1, 1), (1, 1, 1))) == ArithPair((3, 1, 1, 1), (1, 1, 1, 1))
    assert star_pendant_lift(ArithPair((1, 3, 3, 3), (3, 1, 1, 1))) == \
        ArithPair((2, 3, 3, 3, 1), (3, 1, 1, 1, 3))


def test_complete_to_star_matches_table():
    table = load_fixture("k3_to_s3")
    for row in table.rows:
        if row.source is not None:
            assert complete_to_star_lift(row.source) == row.pair
    assert new_vertex_first(ArithPair((3, 3, 3, 1), (1, 1, 1, 3))).d == (1, 3, 3, 3)


def test_reachable_support():
    g = make_c4_fan(3)
    order = c4_fan_display_order(3)
    disp = (1, 2, 0, 3, 3, 0, 2, 2, 0, 1)
    r = [0] * 10
    for pos, v in enumerate(order):
        r[v] = disp[pos]
    assert reachable_support(g, r, 7) == {1, 2}
    assert reachable_support(F2, (1, 1, 1, 1, 1), 1) == {0, 2}
    star = make_family("star", 3)
    assert reachable_support(star, (0, 5, 0, 7), 1) == {3}
    path = make_family("path", 5)
    assert reachable_support(path, (1, 0, 0, 0, 2), 2) == {0, 4}


def test_algorithm_one_trace():
    g = make_c4_fan(3)
    order = c4_fan_display_order(3)
    disp0 = (1, 2, 0, 3, 3, 0, 2, 2, 0, 1)
    r0 = [0] * 10
    for pos, v in enumerate(order):
        r0[v] = disp0[pos]
    steps = trace_r_subdivision(g, r0, VertexOrder((7, 8, 9)))
    as_disp = [tuple(s.r[v] for v in order) for s in steps]
    assert [s.support for s in steps] == [{1, 2}, {3, 4}, {5, 6}]
    assert as_disp == [(1, 2, 5, 3, 3, 0, 2, 2, 0, 1), (1, 2, 5, 3, 3, 5, 2, 2, 0, 1),
                       (1, 2, 5, 3, 3, 5, 2, 2, 3, 1)]
    assert d_from_r(g, steps[-1].r) is not None


def test_algorithm_one_edge_cases():
    g = make_c4_fan(1)
    assert complete_r_subdivision(g, (1, 1, 1, 1), ()) == (1, 1, 1, 1)
    with pytest.raises(InvalidInputError):
        complete_r_subdivision(g, (1, 1, 1, 0), (2,))
    assert VertexOrder.from_mapping({9: 3, 7: 1, 8: 2}).sequence == (7, 8, 9)


def test_algorithm_two():
    assert complete_r_arrow_star(fan_pair((1, 2, 3, 2, 3))) == (1, 2, 3, 2, 3, 6, 6)
    assert complete_r_arrow_star(laplacian_structure(F2)) == (1, 1, 1, 1, 1, 3, 3)
    assert complete_r_arrow_star(fan_pair((1, 1, 2))) == (1, 1, 2, 4)
    assert complete_r_arrow_star(fan_pair((1, 2, 3, 2, 3)), order=(6, 5)) == (1, 2, 3, 2, 3, 6, 6)
    with pytest.raises(InvalidInputError):
        complete_r_arrow_star(ArithPair((1, 1, 1, 1, 1), (1, 1, 1, 1, 1)))


def test_subdivision_count_bound(f2):
    a = len(f2)
    per_arm = {(1, 2): 1, (3, 4): 1}
    assert subdivision_count_bound(F2, per_arm, count=a) == (a - 1) + 2
    assert subdivision_count_bound(F2, {(1, 2): 0}, count=a) == a
    assert subdivision_count_bound(make_family("cycle", 3), [1]) == 11
    assert subdivision_count_bound(make_family("cycle", 3), [2]) == 9 * 2 + 3
    with pytest.raises(MissingDataError):
        subdivision_count_bound(F2, [1])
    with pytest.raises(InvalidInputError):
        subdivision_count_bound(F2, {(1, 3): 1}, count=a)


def test_subdivided_cycle_count_respects_bound(enumerated):
    # C_3 with one edge subdivided k times is C_{3+k}
    c3 = make_family("cycle", 3)
    for k in (1, 2):
        assert len(enumerated("cycle", 3 + k)) >= subdivision_count_bound(c3, [k])
