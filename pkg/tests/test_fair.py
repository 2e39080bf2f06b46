from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from conftest import cycle, irreducible_cores
from nearcoupon import fair, oracle, pipeline
from nearcoupon.embedding import _euler_ok, trace_faces
from nearcoupon.errors import FourColoringTimeout, PreconditionViolated
from nearcoupon.generators import named, random_near_triangulation, random_triangulation


def proper(g, f) -> bool:
    return all(f[u] != f[v] for u, v in g.edges())


def w5_contracted():
    g = named("wheel", 5)
    res = pipeline.contract(g, pipeline.build_independent_set(g))
    return res.gprime, res.protected


def test_cut_keeps_protected_vertices_on_a():
    gp, prot = w5_contracted()
    cut = fair.constrained_cut(gp, prot)
    assert cut.part("B") == [] and cut.moves == 0


def test_cut_moves_lone_unprotected_vertex():
    w = named("wheel", 5)
    prot = [(i, (i + 1) % 5) for i in range(5)]
    cut = fair.constrained_cut(w, prot)
    assert cut.side[5] == "B"
    assert cut.crossing == 5


def test_cut_on_icosahedron_gives_three_cross_neighbours():
    ico = named("icosahedron")
    cut = fair.constrained_cut(ico, [])
    for v in ico.vertices():
        assert sum(cut.side[u] != cut.side[v] for u in ico.neighbors(v)) >= 3
    assert cut.moves <= ico.num_edges


def test_side_graph_replaces_vertex_by_triangle():
    w = named("wheel", 5)
    prot = [(i, (i + 1) % 5) for i in range(5)]
    cut = fair.constrained_cut(w, prot)
    h = fair.build_side_graph(w, prot, cut, "A")
    assert h.vertices() == [0, 1, 2, 3, 4]
    # the hub's three lowest neighbours 0, 1, 2 become a triangle
    assert h.has_edge(0, 1) and h.has_edge(1, 2) and h.has_edge(0, 2)
    assert _euler_ok(h, trace_faces(h))
    hb = fair.build_side_graph(w, prot, cut, "B")
    assert hb.vertices() == [5] and hb.num_edges == 0


def test_side_graph_with_empty_other_side_is_unchanged():
    gp, prot = w5_contracted()
    cut = fair.constrained_cut(gp, prot)
    h = fair.build_side_graph(gp, prot, cut, "A")
    assert h.rotations() == gp.rotations()


def test_side_graph_adds_nothing_for_existing_triangle():
    k4 = named("K4")
    prot = [(0, 1), (1, 2), (0, 2)]
    cut = fair.Cut({0: "A", 1: "A", 2: "A", 3: "B"}, 3)
    h = fair.build_side_graph(k4, prot, cut, "A")
    assert h.edges() == [(0, 1), (0, 2), (1, 2)]


def test_four_color_examples():
    assert fair.four_color(named("K4")) == {0: 1, 1: 2, 2: 3, 3: 4}
    c5 = fair.four_color(cycle(5))
    assert proper(cycle(5), c5) and len(set(c5.values())) <= 4
    for heuristic in (True, False):
        f = fair.four_color(named("icosahedron"), heuristic=heuristic)
        assert proper(named("icosahedron"), f)
        assert set(f.values()) <= {1, 2, 3, 4}


def test_four_color_budget_exhaustion():
    with pytest.raises(FourColoringTimeout) as exc:
        fair.four_color(named("icosahedron"), budget=3, heuristic=False)
    assert exc.value.budget == 3


def test_canonical_colors():
    assert fair.canonical_colors({3: 7, 1: 4, 2: 4}) == {1: 1, 2: 1, 3: 2}


def test_fair_coloring_examples():
    k4 = named("K4")
    allp = k4.edges()
    f = fair.fair_four_coloring(k4, allp)
    assert oracle.check_fair(k4, allp, f)
    gp, prot = w5_contracted()
    assert oracle.check_fair(gp, prot, fair.fair_four_coloring(gp, prot))
    ico = named("icosahedron")
    stats = fair.SearchStats()
    f = fair.fair_four_coloring(ico, [], stats=stats)
    assert oracle.check_fair(ico, [], f)
    assert stats.calls == 2 and stats.max_nodes <= fair.DEFAULT_NODE_BUDGET


def test_fair_coloring_precondition():
    with pytest.raises(PreconditionViolated):
        fair.fair_four_coloring(named("octahedron"), [])


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 300), st.integers(0, 10**6), st.booleans())
def test_four_color_is_proper_on_triangulations(n, seed, heuristic):
    g = random_triangulation(n if heuristic else min(n, 60), seed)
    f = fair.four_color(g, budget=10**6, heuristic=heuristic)
    assert proper(g, f)


def test_fair_on_contracted_cores():
    done = 0
    for seed in range(200):
        g = random_near_triangulation(40 + seed % 80, seed, 3)
        for h, s in irreducible_cores(g):
            if h.n < 5:
                continue
            res = pipeline.contract(h, pipeline.build_independent_set(h, sorted(s)))
            dump = {}
            f = fair.fair_four_coloring(res.gprime, res.protected, dump=dump)
            assert oracle.check_fair(res.gprime, res.protected, f)
            assert dump["cut_moves"] <= res.gprime.num_edges
            done += 1
        if done >= 40:
            break
    assert done >= 40
