from __future__ import annotations

import itertools
import math

import pytest

from nearcoupon.embedding import EmbeddedGraph, build_graph
from nearcoupon.generators import embed_straight_line
from nearcoupon import reduction

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# -- independent brute-force references (plain enumeration, no pruning) -----


def naive_first_two_coloring(g: EmbeddedGraph, targets):
    vs = g.vertices()
    targets = list(targets)
    for combo in itertools.product("ab", repeat=len(vs)):
        f = dict(zip(vs, combo))
        if all(len({f[u] for u in g.neighbors(t)}) == 2 for t in targets):
            return f
    return None


def naive_has_k_tds(g: EmbeddedGraph, k: int) -> bool:
    """Assign every vertex to one of k sets or to none (label k)."""
    vs = g.vertices()
    for combo in itertools.product(range(k + 1), repeat=len(vs)):
        f = dict(zip(vs, combo))
        if all(all(any(f[u] == c for u in g.neighbors(v)) for v in vs) for c in range(k)):
            return True
    return False


def good(g: EmbeddedGraph, special, f) -> bool:
    """A direct re-statement of the goal, independent of the oracle module."""
    for v in g.vertices():
        if g.degree(v) >= 3 or v in special:
            if len({f[u] for u in g.neighbors(v)}) < 2:
                return False
    return True


# -- small hand-made instances ---------------------------------------------


def bowtie() -> EmbeddedGraph:
    """Two triangles 0,1,2 and 2,3,4 sharing vertex 2."""
    coords = {0: (-2.0, 0.0), 1: (-1.0, 1.5), 2: (0.0, 0.0), 3: (1.0, 1.5), 4: (2.0, 0.0)}
    return embed_straight_line(coords, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


def two_k4_sharing_vertex() -> EmbeddedGraph:
    """K4 on 0,1,2,3 (centre 3) and K4 on 2,4,5,6 (centre 6) sharing vertex 2."""
    coords = {
        0: (-4.0, 0.0), 1: (-2.0, 3.0), 2: (0.0, 0.0), 3: (-2.0, 1.0),
        4: (2.0, 3.0), 5: (4.0, 0.0), 6: (2.0, 1.0),
    }
    edges = [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3), (2, 4), (4, 5), (2, 5), (2, 6), (4, 6), (5, 6)]
    return embed_straight_line(coords, edges)


def triangles_with_bridge() -> EmbeddedGraph:
    """Triangles 0,1,2 and 3,4,5 joined by the bridge 2-3."""
    coords = {0: (-3.0, 0.0), 1: (-3.0, 2.0), 2: (-1.0, 1.0), 3: (1.0, 1.0), 4: (3.0, 2.0), 5: (3.0, 0.0)}
    edges = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]
    return embed_straight_line(coords, edges)


def special_path_between_triangles() -> EmbeddedGraph:
    """Triangle 0,1,2 -- path 2,3,4,5 -- triangle 5,6,7; vertices 3 and 4 have degree 2."""
    coords = {
        0: (-4.0, 0.0), 1: (-4.0, 2.0), 2: (-2.0, 1.0), 3: (-1.0, 1.0), 4: (1.0, 1.0),
        5: (2.0, 1.0), 6: (4.0, 2.0), 7: (4.0, 0.0),
    }
    edges = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 7)]
    return embed_straight_line(coords, edges)


def cycle(n: int) -> EmbeddedGraph:
    coords = {i: (math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n)) for i in range(n)}
    return embed_straight_line(coords, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> EmbeddedGraph:
    rot = {i: [j for j in (i - 1, i + 1) if 0 <= j < n] for i in range(n)}
    walk = list(range(n)) + list(range(n - 2, 0, -1))
    return build_graph(rot, walk)


def irreducible_cores(g: EmbeddedGraph, special=()):
    """All irreducible subproblems reached while reducing ``(g, special)``."""
    out = []
    stack = [(g, frozenset(special))]
    while stack:
        h, s = stack.pop()
        step = reduction.find_reduction(h, s)
        if step is None:
            out.append((h, s))
            continue
        stack.extend(reduction.apply_reduction(h, s, step))
    return out


@pytest.fixture
def w5():
    from nearcoupon.generators import named

    return named("wheel", 5)
