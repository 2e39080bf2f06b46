"""Fair four-colourings of a planar graph with a set of protected edges.

A four-colouring of ``(gamma, P)`` is fair when every protected edge is
bichromatic and every vertex not spanned by ``P`` sees at least three colours
among its neighbours.  The construction:

1. a cut (A, B) that no protected edge crosses and that no single move of an
   unprotected vertex can improve, so each unprotected vertex (degree >= 5)
   has at least three neighbours across;
2. for each side, a planar graph on that side where every unprotected vertex
   of the opposite side is replaced by a triangle on three of its neighbours;
3. a proper four-colouring of each side graph.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable

from . import kernels, oracle
from .embedding import EmbeddedGraph, _euler_ok, trace_faces
from .timing import PhaseTimer, phase
from .errors import (
    FourColoringTimeout,
    InternalInvariantViolation,
    NotPlanarAfterSurgery,
    PreconditionViolated,
)

DEFAULT_NODE_BUDGET = 10**7
SIDES = ("A", "B")


@dataclass
class Cut:
    side: dict[int, str]
    crossing: int
    moves: int = 0

    def part(self, s: str) -> list[int]:
        return sorted(v for v, t in self.side.items() if t == s)


@dataclass
class SearchStats:
    """Counters filled in by :func:`four_color` / :func:`fair_four_coloring`."""

    calls: int = 0
    heuristic_hits: int = 0
    max_nodes: int = 0
    total_nodes: int = 0
    cut_moves: list[int] = field(default_factory=list)


def protected_vertices(protected: Iterable[tuple[int, int]]) -> set[int]:
    out: set[int] = set()
    for u, v in protected:
        out.add(u)
        out.add(v)
    return out


def constrained_cut(gamma: EmbeddedGraph, protected: Iterable[tuple[int, int]]) -> Cut:
    """Local-search cut; protected vertices stay on side A, so no protected
    edge ever crosses.  Unprotected vertices are swept in ascending id and
    moved while that strictly increases the number of crossing edges."""
    fixed = protected_vertices(protected)
    side = {v: "A" for v in gamma.vertices()}
    movable = [v for v in gamma.vertices() if v not in fixed]
    crossing = moves = 0
    improved = True
    while improved:
        improved = False
        for v in movable:
            s = side[v]
            same = sum(1 for u in gamma.neighbors(v) if side[u] == s)
            opp = gamma.degree(v) - same
            if same > opp:
                side[v] = "B" if s == "A" else "A"
                crossing += same - opp
                moves += 1
                improved = True
    return Cut(side, crossing, moves)


def build_side_graph(gamma: EmbeddedGraph, protected: Iterable[tuple[int, int]], cut: Cut, side: str) -> EmbeddedGraph:
    """Planar graph on ``side`` in which each unprotected vertex of the other
    side is replaced by a triangle on its three lowest-id neighbours here."""
    fixed = protected_vertices(protected)
    other = "B" if side == "A" else "A"
    rot = {v: list(gamma.rotation(v)) for v in gamma.vertices()}
    for v in gamma.vertices():
        if cut.side[v] == other:
            rot[v] = [u for u in rot[v] if cut.side[u] == side]
    for v in gamma.vertices():
        if cut.side[v] == side:
            rot[v] = [u for u in rot[v] if cut.side[u] == side or u not in fixed]
    for v in gamma.vertices():
        if cut.side[v] == other and v in fixed:
            del rot[v]
    trimmed = [v for v in gamma.vertices() if cut.side[v] == other and v not in fixed]
    for x in trimmed:
        if len(rot[x]) < 3:
            raise InternalInvariantViolation(f"unprotected vertex {x} has fewer than 3 neighbours across the cut")
        keep = set(sorted(rot[x])[:3])
        for u in rot[x]:
            if u not in keep:
                rot[u].remove(x)
        rot[x] = [u for u in rot[x] if u in keep]
    for x in trimmed:
        ring = rot.pop(x)
        add = {}
        for i in range(3):
            a, b = ring[i], ring[(i + 1) % 3]
            add[(a, b)] = add[(b, a)] = b not in rot[a]
        for i, a in enumerate(ring):
            nxt, prv = ring[(i + 1) % 3], ring[i - 1]
            slot = [y for y in (nxt, prv) if add[(a, y)]]
            j = rot[a].index(x)
            rot[a][j:j + 1] = slot
    h = EmbeddedGraph({v: tuple(ns) for v, ns in rot.items()})
    h = EmbeddedGraph(h.rotations(), _first_face_per_component(h))
    if not _euler_ok(h, trace_faces(h)):
        raise NotPlanarAfterSurgery(f"side graph {side} fails the Euler check")
    return h


def _first_face_per_component(h: EmbeddedGraph) -> set:
    comp_of = {v: i for i, c in enumerate(h.components()) for v in c}
    chosen: dict[int, list] = {}
    for f in trace_faces(h):
        c = comp_of[f.walk[0]]
        if c not in chosen:
            chosen[c] = f.darts()
    return {d for ds in chosen.values() for d in ds}


def _smallest_last_order(adj: dict[int, tuple[int, ...]]) -> list[int]:
    deg = {v: len(ns) for v, ns in adj.items()}
    heap = [(d, v) for v, d in deg.items()]
    heapq.heapify(heap)
    removed: set[int] = set()
    order = []
    while heap:
        d, v = heapq.heappop(heap)
        if v in removed or d != deg[v]:
            continue
        removed.add(v)
        order.append(v)
        for u in adj[v]:
            if u not in removed:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    return order


def _kempe_greedy(adj: dict[int, tuple[int, ...]]) -> dict[int, int] | None:
    """Greedy colouring in reverse smallest-last order; a vertex whose
    neighbours already use all four colours is fixed by a Kempe-chain swap
    when one frees a colour.  Returns ``None`` when no swap helps."""
    colors: dict[int, int] = {}
    for v in reversed(_smallest_last_order(adj)):
        used = {colors[u] for u in adj[v] if u in colors}
        free = [c for c in (0, 1, 2, 3) if c not in used]
        if free:
            colors[v] = free[0]
            continue
        for c1 in range(4):
            for c2 in range(c1 + 1, 4):
                starts = [u for u in adj[v] if colors.get(u) == c1]
                blockers = {u for u in adj[v] if colors.get(u) == c2}
                chain = set(starts)
                stack = list(starts)
                blocked = False
                while stack and not blocked:
                    x = stack.pop()
                    for y in adj[x]:
                        if y in chain or y == v or colors.get(y) not in (c1, c2):
                            continue
                        if y in blockers:
                            blocked = True
                            break
                        chain.add(y)
                        stack.append(y)
                if blocked:
                    continue
                for x in chain:
                    colors[x] = c2 if colors[x] == c1 else c1
                colors[v] = c1
                break
            else:
                continue
            break
        else:
            return None
    return colors


def canonical_colors(colors: dict[int, int]) -> dict[int, int]:
    """Rename colours to 1..4 by first appearance in ascending vertex id."""
    rename: dict[int, int] = {}
    out = {}
    for v in sorted(colors):
        c = colors[v]
        if c not in rename:
            rename[c] = len(rename) + 1
        out[v] = rename[c]
    return out


def four_color(
    h: EmbeddedGraph,
    budget: int = DEFAULT_NODE_BUDGET,
    heuristic: bool = True,
    stats: SearchStats | None = None,
) -> dict[int, int]:
    """Proper colouring of a planar graph with colours 1..4.

    Tries the Kempe-chain greedy first and falls back to exact DSATUR
    backtracking limited to ``budget`` assignments.
    """
    adj = {v: h.neighbors(v) for v in h.vertices()}
    if stats is not None:
        stats.calls += 1
    colors = _kempe_greedy(adj) if heuristic else None
    nodes = 0
    if colors is not None:
        if stats is not None:
            stats.heuristic_hits += 1
    else:
        ids, indptr, indices, _ = kernels.to_csr(adj)
        res, nodes, status = kernels.dsatur_color(len(ids), indptr, indices, 4, budget)
        if stats is not None:
            stats.max_nodes = max(stats.max_nodes, nodes)
            stats.total_nodes += nodes
        if status == kernels.BUDGET:
            raise FourColoringTimeout(nodes, budget)
        if status == kernels.INFEASIBLE:
            raise InternalInvariantViolation("graph handed to four_color is not 4-colourable (not planar?)")
        colors = {v: res[i] for i, v in enumerate(ids)}
    for v, ns in adj.items():
        for u in ns:
            if colors[u] == colors[v]:
                raise InternalInvariantViolation(f"improper colouring on edge {u}-{v}")
    return canonical_colors(colors)


def fair_four_coloring(
    gamma: EmbeddedGraph,
    protected: Iterable[tuple[int, int]],
    budget: int = DEFAULT_NODE_BUDGET,
    stats: SearchStats | None = None,
    dump: dict | None = None,
    timer: PhaseTimer | None = None,
) -> dict[int, int]:
    protected = sorted((min(u, v), max(u, v)) for u, v in protected)
    fixed = protected_vertices(protected)
    low = [v for v in gamma.vertices() if gamma.degree(v) <= 4 and v not in fixed]
    if low:
        raise PreconditionViolated(f"protected edges do not span the 4- vertices {low[:5]}")
    with phase(timer, "cut"):
        cut = constrained_cut(gamma, protected)
    if stats is not None:
        stats.cut_moves.append(cut.moves)
    f4: dict[int, int] = {}
    sides = {}
    for s in SIDES:
        with phase(timer, "cut"):
            h = build_side_graph(gamma, protected, cut, s)
        sides[s] = h
        with phase(timer, "four_coloring"):
            f4.update(four_color(h, budget, stats=stats))
    if dump is not None:
        dump["cut"] = {str(v): cut.side[v] for v in sorted(cut.side)}
        dump["cut_moves"] = cut.moves
        dump["side_graphs"] = {s: {str(v): list(sides[s].rotation(v)) for v in sides[s].vertices()} for s in SIDES}
        dump["colors4"] = {str(v): f4[v] for v in sorted(f4)}
    if not oracle.check_fair(gamma, protected, f4):
        raise InternalInvariantViolation("assembled four-colouring is not fair")
    return f4
