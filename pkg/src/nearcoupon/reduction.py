"""Reduction rules and the top-level solver.

``solve`` repeatedly applies the first applicable rule, in this order:

Component, Bridge, CutVertex, base cases (K1, K3, K4, diamond),
DropBoundaryEdge, DropTwoVertexPair, DropPlainTwoVertex.

Every rule produces strictly smaller subproblems whose good colourings lift
back to a good colouring of the parent.  Instances where no rule applies go
to :mod:`nearcoupon.pipeline`.  Recursion is unrolled onto an explicit stack
so graph size is not limited by the interpreter's recursion depth.
"""
from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping

from . import oracle, pipeline
from .embedding import EmbeddedGraph, delete_edge, delete_vertex, induced_subgraph, validate
from .errors import (
    InternalInvariantViolation,
    NotABaseCase,
    NotNearTriangulation,
    SpecialSetInvalid,
)
from .fair import DEFAULT_NODE_BUDGET
from .timing import PhaseTimer

RULES = (
    "Component",
    "Bridge",
    "CutVertex",
    "BaseK1",
    "BaseK3",
    "BaseK4",
    "BaseDiamond",
    "DropBoundaryEdge",
    "DropTwoVertexPair",
    "DropPlainTwoVertex",
)
BASE_RULES = ("BaseK1", "BaseK3", "BaseK4", "BaseDiamond")
OTHER = {"a": "b", "b": "a"}


class ChildNotGood(InternalInvariantViolation):
    pass


@dataclass
class ReductionStep:
    rule: str
    graph: EmbeddedGraph
    special: frozenset
    data: dict = field(default_factory=dict)
    children: list[tuple[EmbeddedGraph, frozenset]] | None = None

    def describe(self) -> str:
        bits = ", ".join(f"{k}={v}" for k, v in self.data.items() if not k.startswith("_"))
        return f"{self.rule}({bits})"


def special_set(g: EmbeddedGraph, special: Iterable[int]) -> frozenset:
    """Validate ``special``: at most two vertices, each of degree exactly 2."""
    s = frozenset(int(v) for v in special)
    if len(s) > 2:
        raise SpecialSetInvalid(f"at most two special vertices allowed, got {sorted(s)}")
    for v in sorted(s):
        if v not in g:
            raise SpecialSetInvalid(f"special vertex {v} is not in the graph")
        if g.degree(v) != 2:
            raise SpecialSetInvalid(f"special vertex {v} has degree {g.degree(v)}, not 2")
    return s


def _flip(f: Mapping[int, str]) -> dict[int, str]:
    return {v: OTHER[c] for v, c in f.items()}


def _side_of(g: EmbeddedGraph, start: int, banned_vertex: int | None = None, banned_edge=None) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in g.rotation(x):
            if y == banned_vertex or y in seen:
                continue
            if banned_edge is not None and {x, y} == banned_edge:
                continue
            seen.add(y)
            queue.append(y)
    return seen


def _bridge_plan(g: EmbeddedGraph, s: frozenset, u: int, v: int):
    """Children specials for bridge ``uv`` or None when both endpoints would
    need the single flip of one side."""
    side_u = _side_of(g, u, banned_edge={u, v})
    side_v = set(g.vertices()) - side_u
    sides = {u: side_u, v: side_v}
    child_s = {}
    helped = []
    options = {}
    for x in (u, v):
        dx = g.degree(x) - 1
        base = {y for y in s if y in sides[x]}
        if dx == 1 and x in s:
            base.discard(x)
            helped.append(x)
        child_s[x] = base
        options[x] = dx == 2
    # endpoints of residual degree 2 are satisfied either inside their side
    # (as a special vertex there) or by flipping the far side
    order = [(False, False), (True, False), (False, True), (True, True)]
    for cross_u, cross_v in order:
        cross = {u: cross_u, v: cross_v}
        if any(cross[x] and not options[x] for x in (u, v)):
            continue
        ss = {}
        for x in (u, v):
            ss[x] = set(child_s[x])
            if options[x] and not cross[x]:
                ss[x].add(x)
        if max(len(ss[u]), len(ss[v])) > 2:
            continue
        if len(helped) + cross_u + cross_v > 1:
            continue
        return sides, {x: frozenset(ss[x]) for x in (u, v)}
    return None


def find_reduction(g: EmbeddedGraph, special: Iterable[int] = ()) -> ReductionStep | None:
    """First applicable rule, or None when ``(g, special)`` is irreducible."""
    s = frozenset(special)
    n = g.n
    if n == 0:
        raise NotNearTriangulation("empty graph")
    walks = g.outer_walks()
    isolated = n > 1 and min(map(len, g._rot.values())) == 0
    if len(walks) > 1 or isolated:
        return ReductionStep("Component", g, s, {"count": len(g.components())})
    if n == 1:
        return ReductionStep("BaseK1", g, s)
    outer = g.outer_darts
    bridges = sorted({(min(a, b), max(a, b)) for a, b in outer if (b, a) in outer})
    for u, v in bridges:
        plan = _bridge_plan(g, s, u, v)
        if plan is not None:
            return ReductionStep("Bridge", g, s, {"edge": (u, v), "_plan": plan})
    if bridges:
        raise InternalInvariantViolation(f"no bridge among {bridges} admits a valid split")
    walk = walks[0]
    seen: set[int] = set()
    repeated = set()
    for x in walk:
        if x in seen:
            repeated.add(x)
        seen.add(x)
    if repeated:
        return ReductionStep("CutVertex", g, s, {"vertex": min(repeated)})
    if n <= 4:
        m = g.num_edges
        tag = {(3, 3): "BaseK3", (4, 6): "BaseK4", (4, 5): "BaseDiamond"}.get((n, m))
        if tag is None:
            raise NotNearTriangulation(f"2-connected graph with {n} vertices and {m} edges is not a near-triangulation")
        return ReductionStep(tag, g, s)
    k = len(walk)
    deg = g.degree
    edges = [
        (min(walk[i], walk[(i + 1) % k]), max(walk[i], walk[(i + 1) % k]))
        for i in range(k)
        if deg(walk[i]) >= 4 and deg(walk[(i + 1) % k]) >= 4
    ]
    if edges:
        return ReductionStep("DropBoundaryEdge", g, s, {"edge": min(edges)})
    twos = sorted(x for x in walk if deg(x) == 2)
    for v in twos:
        for w in sorted(g.rotation(v)):
            if deg(w) <= 3:
                u = next(y for y in g.rotation(v) if y != w)
                return ReductionStep("DropTwoVertexPair", g, s, {"v": v, "w": w, "u": u})
    for v in twos:
        if v not in s:
            return ReductionStep("DropPlainTwoVertex", g, s, {"v": v})
    return None


def apply_reduction(g: EmbeddedGraph, special: Iterable[int], step: ReductionStep) -> list[tuple[EmbeddedGraph, frozenset]]:
    s = frozenset(special)
    rule, d = step.rule, step.data
    if rule in BASE_RULES:
        out = []
    elif rule == "Component":
        out = []
        for comp in g.components():
            cs = set(comp)
            out.append((induced_subgraph(g, cs), frozenset(x for x in s if x in cs)))
    elif rule == "Bridge":
        u, v = d["edge"]
        sides, ss = d["_plan"]
        out = [
            (induced_subgraph(g, sides[u], [(u, v)]), ss[u]),
            (induced_subgraph(g, sides[v], [(u, v)]), ss[v]),
        ]
    elif rule == "CutVertex":
        c = d["vertex"]
        rest = [x for x in g.vertices() if x != c]
        comp = _side_of(g, rest[0], banned_vertex=c)
        g2 = comp | {c}
        g1 = (set(g.vertices()) - comp) | {c}
        if len([x for x in s if x in g2]) > 1:
            g1, g2 = g2, g1
        h1, h2 = induced_subgraph(g, g1), induced_subgraph(g, g2)
        s1 = frozenset(x for x in s if x in g1)
        s2 = frozenset(x for x in s if x in g2)
        if h2.degree(c) == 2:
            s2 = s2 | {c}
        d["sides"] = (min(g1), min(g2))
        out = [(h1, s1), (h2, s2)]
    elif rule == "DropBoundaryEdge":
        out = [(delete_edge(g, *d["edge"]), s)]
    elif rule == "DropTwoVertexPair":
        v, w, u = d["v"], d["w"], d["u"]
        if g.degree(w) != 3 or not g.has_edge(u, w):
            raise InternalInvariantViolation(f"2-vertex {v} with 3- neighbour {w} is not in a diamond")
        d["x"] = next(y for y in g.rotation(w) if y not in (v, u))
        h = delete_vertex(delete_vertex(g, v), w)
        out = [(h, s - {v})]
    elif rule == "DropPlainTwoVertex":
        out = [(delete_vertex(g, d["v"]), s)]
    else:
        raise ValueError(f"unknown rule {rule}")
    for h, hs in out:
        bad = [x for x in hs if h.degree(x) != 2]
        if len(hs) > 2 or bad:
            raise InternalInvariantViolation(f"{rule}: child special set {sorted(hs)} is invalid")
    step.children = out
    return out


def base_case_coloring(g: EmbeddedGraph, special: Iterable[int] = ()) -> dict[int, str]:
    """First colouring in lexicographic order (ids ascending, ``a`` < ``b``)
    that satisfies the 3+-vertices and ``special``."""
    n, m = g.n, g.num_edges
    if (n, m) not in ((1, 0), (3, 3), (4, 6), (4, 5)) or len(g.components()) != 1:
        raise NotABaseCase(f"graph with {n} vertices and {m} edges is not K1, K3, K4 or the diamond")
    vs = g.vertices()
    targets = oracle.theorem_targets(g, special)
    for combo in product("ab", repeat=n):
        f = dict(zip(vs, combo))
        if all(len({f[u] for u in g.neighbors(t)}) == 2 for t in targets):
            return f
    raise InternalInvariantViolation("base case has no good colouring")


def _check_local(g: EmbeddedGraph, s: frozenset, f: Mapping[int, str], vs: Iterable[int], rule: str) -> None:
    for t in vs:
        if (g.degree(t) >= 3 or t in s) and len({f[u] for u in g.neighbors(t)}) < 2:
            raise ChildNotGood(f"{rule} lift leaves {t} unsatisfied")


def lift(step: ReductionStep, child_colorings: list[Mapping[int, str]]) -> dict[int, str]:
    g, s, d, rule = step.graph, step.special, step.data, step.rule
    if rule in BASE_RULES:
        f = base_case_coloring(g, s)
        touched: Iterable[int] = g.vertices()
    elif rule == "Component":
        f = {}
        for c in child_colorings:
            f.update(c)
        touched = ()
    elif rule == "Bridge":
        u, v = d["edge"]
        fu, fv = child_colorings
        for flip in (False, True):
            f = dict(fu)
            f.update(_flip(fv) if flip else fv)
            if all((g.degree(x) < 3 and x not in s) or len({f[y] for y in g.neighbors(x)}) == 2 for x in (u, v)):
                break
        touched = (u, v)
    elif rule == "CutVertex":
        c = d["vertex"]
        f1, f2 = child_colorings
        if f2[c] != f1[c]:
            f2 = _flip(f2)
        f = dict(f1)
        f.update(f2)
        touched = (c,)
    elif rule == "DropBoundaryEdge":
        f = dict(child_colorings[0])
        touched = d["edge"]
    elif rule == "DropTwoVertexPair":
        f = dict(child_colorings[0])
        v, w, u, x = d["v"], d["w"], d["u"], d["x"]
        f[v] = OTHER[f[x]]
        f[w] = OTHER[f[u]]
        touched = (v, w, u, x)
    elif rule == "DropPlainTwoVertex":
        f = dict(child_colorings[0])
        v = d["v"]
        f[v] = "a"
        touched = (v,) + g.rotation(v)
    else:
        raise ValueError(f"unknown rule {rule}")
    if len(f) != g.n:
        raise ChildNotGood(f"{rule} lift coloured {len(f)} of {g.n} vertices")
    _check_local(g, s, f, touched, rule)
    return f


def _irreducible_checks(g: EmbeddedGraph) -> None:
    """No chord may join two boundary 3-vertices in an irreducible instance."""
    walk = g.outer_walks()[0]
    k = len(walk)
    pos = {x: i for i, x in enumerate(walk)}
    for i, x in enumerate(walk):
        if g.degree(x) != 3:
            continue
        for y in g.rotation(x):
            if y in pos and g.degree(y) == 3 and y not in (walk[i - 1], walk[(i + 1) % k]):
                raise InternalInvariantViolation(f"chord {x}-{y} joins two boundary 3-vertices")


def solve(
    g: EmbeddedGraph,
    special: Iterable[int] = (),
    *,
    audit: pipeline.PipelineAudit | None = None,
    timer: PhaseTimer | None = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
    trace: list[str] | None = None,
) -> dict[int, str]:
    """Good two-colouring of a near-triangulation: every 3+-vertex and every
    special vertex sees both colours.  The result is verified before return."""
    rep = validate(g)
    if not rep.is_near_triangulation:
        where = f" (face {list(rep.offending_face)})" if rep.offending_face else ""
        raise NotNearTriangulation("input is not a near-triangulation" + where)
    s = special_set(g, special)
    if g.n == 0:
        return {}
    t0 = time.perf_counter()
    pipe0 = timer.pipeline_seconds() if timer is not None else 0.0

    # frame: [graph, special, step, results]
    stack: list[list] = [[g, s, None, []]]
    result: dict[int, str] | None = None
    while stack:
        fr = stack[-1]
        if result is not None:
            fr[3].append(result)
            result = None
        h, hs, step, results = fr
        if step is None:
            step = find_reduction(h, hs)
            if step is None:
                _irreducible_checks(h)
                if trace is not None:
                    trace.append(f"Irreducible(n={h.n})")
                result = pipeline.solve_irreducible(h, hs, audit=audit, timer=timer, node_budget=node_budget)
                stack.pop()
                continue
            if trace is not None:
                trace.append(step.describe())
            apply_reduction(h, hs, step)
            fr[2] = step
        if len(results) < len(step.children):
            stack.append([*step.children[len(results)], None, []])
            continue
        result = lift(step, results)
        stack.pop()

    if timer is not None:
        pipe = timer.pipeline_seconds() - pipe0
        timer.add("reduction", time.perf_counter() - t0 - pipe)
    report = oracle.check_coupon(g, oracle.theorem_targets(g, s), result)
    if not report:
        raise InternalInvariantViolation(f"solver output fails verification at {report.violated[:5]}")
    return result
