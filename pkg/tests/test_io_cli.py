from __future__ import annotations

import json

import pytest

from conftest import bowtie, good
from nearcoupon import cli, fair, io
from nearcoupon.errors import ParseError
from nearcoupon.generators import named, random_near_triangulation

K4_TEXT = '{"n": 4, "rotations": [[1, 3, 2], [0, 2, 3], [0, 3, 1], [0, 1, 2]], "outer_face": [0, 1, 2]}\n'


def test_graph_round_trip_is_byte_identical(tmp_path):
    p = tmp_path / "k4.json"
    p.write_text(K4_TEXT)
    g = io.read_graph(p)
    assert io.dumps_graph(g) == K4_TEXT
    assert io.dumps_graph(named("K4")) == K4_TEXT


def test_round_trip_of_generated_and_disconnected_graphs(tmp_path):
    from nearcoupon.embedding import delete_vertex

    for g in (random_near_triangulation(50, 1, 2), delete_vertex(bowtie(), 2)):
        p = tmp_path / "g.json"
        io.write_graph(p, g)
        h = io.read_graph(p)
        succ = lambda x: {(v, u): x.succ(v, u) for v in x.vertices() for u in x.rotation(v)}  # noqa: E731
        assert succ(h) == succ(g) and h.outer_darts == g.outer_darts
        assert io.dumps_graph(h) == p.read_text()


def test_sparse_ids_use_object_form():
    from nearcoupon.embedding import delete_vertex

    obj = io.graph_to_obj(delete_vertex(named("K4"), 1))
    assert obj["rotations"] == {"0": [2, 3], "2": [0, 3], "3": [0, 2]}
    assert io.graph_from_obj(obj).vertices() == [0, 2, 3]


def test_parse_errors(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(K4_TEXT[:30])
    with pytest.raises(ParseError, match="line 1 column"):
        io.read_graph(p)
    with pytest.raises(ParseError, match="outer_face"):
        io.graph_from_obj({"n": 1, "rotations": [[]]})
    with pytest.raises(ParseError, match="'n'"):
        io.graph_from_obj({"n": 3, "rotations": [[]], "outer_face": []})
    with pytest.raises(ParseError):
        io.graph_from_obj({"rotations": [["x"]], "outer_face": []})
    with pytest.raises(ParseError):
        io.read_graph(tmp_path / "missing.json")


def test_coloring_round_trip(tmp_path):
    p = tmp_path / "c.json"
    io.write_coloring(p, {1: "b", 0: "a"}, [1])
    assert p.read_text() == '{"colors": {"0": "a", "1": "b"}, "special": [1]}\n'
    assert io.read_coloring(p) == ({0: "a", 1: "b"}, [1])
    p.write_text('{"colors": {"0": "c"}}')
    with pytest.raises(ParseError):
        io.read_coloring(p)


def test_dot_export():
    text = io.to_dot(named("K3"), {0: "a", 1: "b", 2: "a"}, [(0, 1)])
    assert text.startswith("graph G {")
    assert "0 -- 1 [penwidth=3];" in text and "1 -- 2;" in text


# -- CLI ----------------------------------------------------------------------


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, g):
    p = tmp_path / name
    io.write_graph(p, g)
    return p


def test_cli_generate_solve_verify(tmp_path, capsys):
    gp = tmp_path / "w5.json"
    assert run(capsys, "generate", "--family", "wheel", "--n", 5, "-o", gp)[0] == 0
    cp = tmp_path / "c.json"
    assert run(capsys, "solve", gp, "-o", cp)[0] == 0
    code, out, _ = run(capsys, "verify", gp, cp)
    assert code == 0 and json.loads(out)["satisfied"]
    assert run(capsys, "verify", gp, cp, "--targets", "all")[0] == 0
    code, out, _ = run(capsys, "validate", gp)
    assert code == 0 and json.loads(out)["is_triangulated_disk"]


def test_cli_special_handling(tmp_path, capsys):
    gp = write(tmp_path, "sun.json", named("3sun"))
    code, _, err = run(capsys, "solve", gp)
    assert code == 2 and "--special" in err
    cp = tmp_path / "c.json"
    assert run(capsys, "solve", gp, "--special", "1,3", "-o", cp)[0] == 0
    f, special = io.read_coloring(cp)
    assert special == [1, 3] and good(named("3sun"), {1, 3}, f)
    assert run(capsys, "verify", gp, cp)[0] == 0
    # the 3-sun has no colouring satisfying every vertex
    code, out, _ = run(capsys, "verify", gp, cp, "--targets", "all")
    assert code == 1 and not json.loads(out)["satisfied"]
    assert run(capsys, "solve", gp, "--special", "0")[0] == 2


def test_cli_oracle_modes(tmp_path, capsys):
    sun = write(tmp_path, "sun.json", named("3sun"))
    code, out, _ = run(capsys, "oracle", sun, "--mode", "two-coloring", "--targets", "all")
    assert code == 1 and json.loads(out) == {"result": "UNSAT"}
    code, out, _ = run(capsys, "oracle", sun, "--mode", "two-coloring", "--special", "1,3")
    assert code == 0 and json.loads(out)["result"] == "SAT"
    code, out, _ = run(capsys, "oracle", sun, "--mode", "tds", "--k", 2)
    assert code == 1 and json.loads(out)["has_k_disjoint_tds"] is False
    code, out, _ = run(capsys, "oracle", sun, "--mode", "min-d3")
    assert code == 0 and json.loads(out)["result"] == "SAT"
    big = write(tmp_path, "big.json", random_near_triangulation(40, 0, 3))
    assert run(capsys, "oracle", big, "--mode", "two-coloring")[0] == 2


def test_cli_input_errors(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"n": 2, "rotations": [[1], [0]')
    code, _, err = run(capsys, "validate", p)
    assert code == 2 and "line 1" in err
    p.write_text('{"n": 2, "rotations": [[1], []], "outer_face": [0, 1]}')
    assert run(capsys, "solve", p)[0] == 2
    assert run(capsys, "generate", "--family", "nonesuch")[0] == 2
    c5 = tmp_path / "c5.json"
    c5.write_text('{"n": 5, "rotations": [[4, 1], [0, 2], [1, 3], [2, 4], [3, 0]], "outer_face": [0, 1, 2, 3, 4]}')
    code, out, _ = run(capsys, "validate", c5)
    assert code == 1 and not json.loads(out)["is_near_triangulation"]
    assert run(capsys, "solve", c5, "--special", "none")[0] == 2


def test_cli_timeout_exit_code(tmp_path, capsys, monkeypatch):
    gp = write(tmp_path, "ico.json", named("icosahedron"))
    monkeypatch.setattr(fair, "_kempe_greedy", lambda adj: None)
    # the icosahedron reduces to an irreducible core that needs four_color
    code, _, err = run(capsys, "solve", gp, "--node-budget", 1)
    assert code == 3 and "timeout" in err


def test_cli_dumps(tmp_path, capsys):
    gp = write(tmp_path, "w5.json", named("wheel", 5))
    dp, df = tmp_path / "pipe.json", tmp_path / "fair.json"
    assert run(capsys, "solve", gp, "--dump-pipeline", dp, "--dump-fair", df)[0] == 0
    pipe = json.loads(dp.read_text())["instances"][0]
    assert pipe["I"] == {"0": 2, "2": 2}
    assert pipe["protected"] == [[1, 3], [1, 4], [1, 5], [3, 5], [4, 5]]
    fr = json.loads(df.read_text())["instances"][0]
    assert set(fr) == {"cut", "cut_moves", "side_graphs", "colors4"}


def test_cli_bench_and_dot(tmp_path, capsys):
    code, out, _ = run(capsys, "bench", "--count", 3, "--n", 40)
    rep = json.loads(out)
    assert code == 0 and rep["invariant_violations"] == 0
    assert set(rep["phases"]) >= {"reduction", "independent_set", "contraction", "cut", "four_coloring", "repair"}
    gp = write(tmp_path, "k3.json", named("K3"))
    code, out, _ = run(capsys, "export-dot", gp)
    assert code == 0 and out.startswith("graph G {")


def test_cli_solve_output_is_deterministic(tmp_path, capsys):
    gp = write(tmp_path, "g.json", random_near_triangulation(120, 9, 2))
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "solve", gp, "--special", "auto", "-o", a)[0] == 0
    assert run(capsys, "solve", gp, "--special", "auto", "-o", b)[0] == 0
    assert a.read_bytes() == b.read_bytes()
