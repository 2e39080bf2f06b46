from __future__ import annotations

import pytest

from conftest import good, irreducible_cores, path_graph
from nearcoupon import oracle, pipeline
from nearcoupon.errors import PreconditionViolated
from nearcoupon.generators import named, random_near_triangulation, random_triangulation


def test_wheel_independent_set_and_contraction(w5):
    ind = pipeline.build_independent_set(w5)
    assert ind.members == [0, 2]
    assert ind.rounds == {0: 2, 2: 2}
    res = pipeline.contract(w5, ind)
    gp = res.gprime
    assert gp.vertices() == [1, 3, 4, 5]
    assert gp.edges() == [(1, 3), (1, 4), (1, 5), (3, 4), (3, 5), (4, 5)]
    assert res.protected == [(1, 3), (1, 4), (1, 5), (3, 5), (4, 5)]
    assert res.records[0].protected == (1, 4, 5)
    assert res.records[2].protected == (1, 3, 5)
    assert res.records[0].added_edge == (1, 4)


@pytest.mark.parametrize("fam", ["octahedron", "icosahedron"])
def test_triangulations_with_4plus_boundary_are_not_irreducible(fam):
    with pytest.raises(PreconditionViolated):
        pipeline.check_irreducible(named(fam))
    with pytest.raises(PreconditionViolated):
        pipeline.build_independent_set(named(fam))


def test_pairing_choice():
    assert pipeline.choose_pairing({0: 1, 1: 2}, [(0, 1)]) == ((1, 3), (2, 4))
    f4 = {0: 1, 1: 2, 2: 3, 3: 4}
    assert pipeline.choose_pairing(f4, [(0, 1), (2, 3)]) == ((1, 3), (2, 4))
    assert pipeline.choose_pairing({0: 1, 1: 2, 2: 3}, [(0, 1), (0, 2)]) == ((1, 4), (2, 3))
    assert pipeline.choose_pairing(f4, []) == ((1, 2), (3, 4))
    with pytest.raises(pipeline.NoValidPairing):
        pipeline.choose_pairing(f4, [(0, 1), (0, 2), (0, 3)])


def test_merge_colours_pair_holding_1_with_a(w5):
    ind = pipeline.build_independent_set(w5)
    res = pipeline.contract(w5, ind)
    f2 = pipeline.merge_to_two_coloring({1: 1, 3: 2, 4: 3, 5: 4}, res)
    assert f2 == {1: "a", 3: "a", 4: "b", 5: "b"}


def test_repair_without_work(w5):
    f = pipeline.repair(w5, [0, 2], {1: "a", 4: "a", 3: "b", 5: "b"})
    assert f[0] == "a" and f[2] == "a"
    assert good(w5, (), f)


def test_repair_recolours_one_member(w5):
    audit = pipeline.PipelineAudit()
    # with 0 and 2 coloured a, vertex 1 sees only a
    f = pipeline.repair(w5, [0, 2], {1: "a", 3: "b", 4: "b", 5: "a"}, audit=audit)
    assert f[0] == "b" and f[2] == "a"
    assert audit.repair_iterations == [1]
    assert good(w5, (), f)


def test_repair_detects_mixed_missing_colours():
    # path 0-1-2-3-4 with 1 and 3 special: 1 lacks b and 3 lacks a unless 2 helps both
    g = path_graph(5)
    with pytest.raises(pipeline.MixedMissingColors):
        pipeline.repair(g, [2], {0: "a", 1: "a", 3: "a", 4: "b"}, special=[1, 3])


def test_independent_set_properties():
    for g, s in collect_cores(40):
        ind = pipeline.build_independent_set(g, sorted(s))
        assert pipeline.independent_set_violations(g, ind) == []
        twos = {v for v in g.vertices() if g.degree(v) == 2}
        assert twos <= set(ind)


def collect_cores(limit: int):
    out = []
    seeds = iter(range(10**6))
    while len(out) < limit:
        seed = next(seeds)
        for g in (random_near_triangulation(20 + seed % 60, seed, 2 + seed % 2), random_triangulation(20 + seed % 40, seed)):
            s = [v for v in g.vertices() if g.degree(v) == 2][:2]
            out += [(h, hs) for h, hs in irreducible_cores(g, s) if h.n >= 5]
    return out[:limit]


def test_pipeline_invariants_hold_on_irreducible_cores():
    cores = collect_cores(60)
    assert len(cores) == 60
    audit = pipeline.PipelineAudit(keep_dumps=True)
    for g, s in cores:
        f = pipeline.solve_irreducible(g, s, audit=audit)
        assert good(g, s, f)
        assert oracle.check_coupon(g, oracle.theorem_targets(g, s), f)
    assert audit.instances == 60
    assert audit.violations == []
    assert audit.checks > 0
    assert all(it <= g.n for it, (g, _) in zip(audit.repair_iterations, cores))
    d = audit.dumps[0]
    assert {"gprime", "protected", "deleted", "I", "special", "cut", "cut_moves", "side_graphs", "colors4"} <= set(d)


def test_contraction_keeps_g_minus_i():
    for g, s in collect_cores(30):
        ind = pipeline.build_independent_set(g, sorted(s))
        res = pipeline.contract(g, ind)
        gp = res.gprime
        assert set(gp.vertices()) == set(g.vertices()) - set(ind)
        for u, w in g.edges():
            if u not in ind and w not in ind:
                assert gp.has_edge(u, w)
        prot = res.protected_vertices
        for v in gp.vertices():
            assert v in prot or gp.degree(v) >= 5
