"""JSON and DOT formats.

Graph file::

    {"n": 4, "rotations": [[1, 3, 2], ...], "outer_face": [0, 1, 2]}

``rotations[v]`` lists the neighbours of ``v`` counterclockwise.  Graphs
whose ids are not 0..n-1 are written with an object keyed by id instead of a
list; both forms are accepted on input.  ``outer_face`` is one walk, or a
list of walks for a disconnected graph.  Writers emit a canonical form (each
rotation starts at its smallest neighbour, each outer walk at its smallest
vertex) so that ``write(read(x)) == x`` for canonical ``x``.

Colouring file::

    {"colors": {"0": "a", "1": "b", ...}, "special": [5]}

Four-colourings use the key ``colors4`` with values 1..4.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Mapping

from .embedding import EmbeddedGraph, build_graph
from .errors import ParseError


def _load(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ParseError(f"{where}: expected a vertex id, got {x!r}")
    try:
        return int(x)
    except ValueError:
        raise ParseError(f"{where}: expected a vertex id, got {x!r}") from None


def graph_from_obj(obj, where: str = "graph") -> EmbeddedGraph:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: top level must be an object")
    for key in ("rotations", "outer_face"):
        if key not in obj:
            raise ParseError(f"{where}: missing field {key!r}")
    rots = obj["rotations"]
    if isinstance(rots, list):
        rots = dict(enumerate(rots))
    if not isinstance(rots, dict):
        raise ParseError(f"{where}: field 'rotations' must be an object or a list")
    rot = {}
    for k, ns in rots.items():
        v = _int(k, f"{where}: rotations key")
        if not isinstance(ns, list):
            raise ParseError(f"{where}: rotations[{k}] must be a list")
        rot[v] = [_int(u, f"{where}: rotations[{k}]") for u in ns]
    if "n" in obj and obj["n"] != len(rot):
        raise ParseError(f"{where}: field 'n' is {obj['n']} but {len(rot)} rotations are given")
    outer = obj["outer_face"]
    if not isinstance(outer, list):
        raise ParseError(f"{where}: field 'outer_face' must be a list")
    if outer and isinstance(outer[0], list):
        walks = [[_int(x, f"{where}: outer_face") for x in w] for w in outer]
    else:
        walks = [[_int(x, f"{where}: outer_face") for x in outer]] if outer else []
    for w in walks:
        for x in w:
            if x not in rot:
                raise ParseError(f"{where}: outer_face mentions unknown vertex {x}")
    return build_graph(rot, walks)


def _canonical_walk(walk) -> list[int]:
    i = min(range(len(walk)), key=lambda k: walk[k])
    return list(walk[i:]) + list(walk[:i])


def graph_to_obj(g: EmbeddedGraph) -> dict:
    vs = g.vertices()
    canon = [_canonical_walk(g.rotation(v)) if g.rotation(v) else [] for v in vs]
    if vs == list(range(len(vs))):
        rots: list | dict = canon
    else:
        rots = {str(v): ns for v, ns in zip(vs, canon)}
    walks = sorted(_canonical_walk(w) for w in g.outer_walks())
    outer = walks[0] if len(walks) == 1 else walks
    return {"n": g.n, "rotations": rots, "outer_face": outer}


def dumps_graph(g: EmbeddedGraph) -> str:
    return json.dumps(graph_to_obj(g)) + "\n"


def read_graph(path) -> EmbeddedGraph:
    return graph_from_obj(_load(path), str(path))


def write_graph(path, g: EmbeddedGraph) -> None:
    Path(path).write_text(dumps_graph(g))


def coloring_to_obj(f: Mapping[int, str], special: Iterable[int] | None = None) -> dict:
    obj: dict = {"colors": {str(v): f[v] for v in sorted(f)}}
    if special is not None:
        obj["special"] = sorted(int(v) for v in special)
    return obj


def dumps_coloring(f: Mapping[int, str], special: Iterable[int] | None = None) -> str:
    return json.dumps(coloring_to_obj(f, special)) + "\n"


def read_coloring(path) -> tuple[dict[int, str], list[int] | None]:
    """Returns ``(colors, special)``; ``special`` is None when absent."""
    obj = _load(path)
    where = str(path)
    if not isinstance(obj, dict) or "colors" not in obj:
        raise ParseError(f"{where}: missing field 'colors'")
    cols = obj["colors"]
    if not isinstance(cols, dict):
        raise ParseError(f"{where}: field 'colors' must be an object")
    f = {}
    for k, c in cols.items():
        if c not in ("a", "b"):
            raise ParseError(f"{where}: colors[{k}] must be 'a' or 'b', got {c!r}")
        f[_int(k, f"{where}: colors key")] = c
    special = obj.get("special")
    if special is not None:
        if not isinstance(special, list):
            raise ParseError(f"{where}: field 'special' must be a list")
        special = [_int(x, f"{where}: special") for x in special]
    return f, special


def write_coloring(path, f: Mapping[int, str], special: Iterable[int] | None = None) -> None:
    Path(path).write_text(dumps_coloring(f, special))


def four_coloring_to_obj(f4: Mapping[int, int]) -> dict:
    return {"colors4": {str(v): int(f4[v]) for v in sorted(f4)}}


_FILL = {"a": "lightblue", "b": "salmon", 1: "lightblue", 2: "salmon", 3: "palegreen", 4: "khaki"}


def to_dot(
    g: EmbeddedGraph,
    colors: Mapping[int, object] | None = None,
    protected: Iterable[tuple[int, int]] = (),
) -> str:
    bold = {(min(u, v), max(u, v)) for u, v in protected}
    lines = ["graph G {", "  node [style=filled, fillcolor=white];"]
    for v in g.vertices():
        attrs = f'label="{v}"'
        if colors is not None and v in colors:
            c = colors[v]
            attrs += f', fillcolor="{_FILL.get(c, "white")}", xlabel="{c}"'
        lines.append(f"  {v} [{attrs}];")
    for u, v in g.edges():
        style = " [penwidth=3]" if (u, v) in bold else ""
        lines.append(f"  {u} -- {v}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
