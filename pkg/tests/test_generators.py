from __future__ import annotations

import pytest

from nearcoupon import io
from nearcoupon.embedding import boundary, validate
from nearcoupon.errors import BadParameter, UnknownFamily
from nearcoupon.generators import FAMILIES, GenSpec, named, random_near_triangulation, random_triangulation


def degrees(g):
    return [g.degree(v) for v in g.vertices()]


def test_named_degree_sequences():
    assert degrees(named("K3")) == [2, 2, 2]
    assert degrees(named("K4")) == [3, 3, 3, 3]
    assert degrees(named("diamond")) == [3, 2, 3, 2]
    assert degrees(named("3sun")) == [4, 2, 4, 2, 4, 2]
    assert degrees(named("wheel", 5)) == [3, 3, 3, 3, 3, 5]
    assert degrees(named("fan", 4)) == [2, 3, 3, 2, 4]
    assert degrees(named("octahedron")) == [4] * 6
    assert degrees(named("icosahedron")) == [5] * 12


def test_named_families_are_near_triangulations():
    for fam in FAMILIES:
        n = 6 if fam in ("wheel", "fan") else None
        assert validate(named(fam, n)).is_near_triangulation, fam
    assert boundary(named("octahedron")).cycle == (0, 1, 2)
    assert boundary(named("icosahedron")).cycle == (0, 1, 2)


def test_random_triangulation_small_cases():
    assert degrees(random_triangulation(4, 0)) == [3, 3, 3, 3]
    assert sorted(degrees(random_triangulation(5, 1))) == [3, 3, 4, 4, 4]
    g = random_triangulation(100, 7)
    assert g.n == 100 and validate(g).is_triangulation


def test_generation_is_deterministic():
    for spec in (GenSpec("triangulation", 60, 3), GenSpec("near-triangulation", 60, 3, 2)):
        assert io.dumps_graph(spec.build()) == io.dumps_graph(spec.build())


def test_near_triangulation_minimum_degree():
    longer = 0
    for seed in range(40):
        g = random_near_triangulation(30, seed, 3)
        assert g.n == 30 and validate(g).is_near_triangulation
        assert min(degrees(g)) >= 3
        longer += max(len(w) for w in g.outer_walks()) > 3
    assert longer > 0


def test_near_triangulation_with_two_vertices():
    with_twos = 0
    for seed in range(40):
        g = random_near_triangulation(20, seed, 2)
        assert min(degrees(g)) >= 2
        with_twos += 2 in degrees(g)
    assert with_twos > 0


def test_generator_errors():
    assert degrees(random_near_triangulation(3, 0, 2)) == [2, 2, 2]
    with pytest.raises(BadParameter):
        random_near_triangulation(3, 0, 3)
    with pytest.raises(BadParameter):
        random_near_triangulation(10, 0, 4)
    with pytest.raises(BadParameter):
        random_triangulation(3, 0)
    with pytest.raises(BadParameter):
        named("wheel")
    with pytest.raises(UnknownFamily):
        named("dodecahedron")
