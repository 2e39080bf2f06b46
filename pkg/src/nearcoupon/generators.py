"""Seeded constructors of embedded instances.

Vertex numbering of the named families (all ids start at 0):

* ``K3``: triangle 0, 1, 2.  ``K4``: outer triangle 0, 1, 2 around centre 3.
* ``diamond``: 4-cycle 0, 1, 2, 3 with chord 0-2.
* ``3sun``: 6-cycle 0..5 with the inner triangle on the even ids 0, 2, 4.
* ``wheel`` (n): rim 0..n-1, hub n.  ``fan`` (n): path 0..n-1, apex n.
* ``octahedron`` / ``icosahedron``: Schlegel diagrams, outer face 0, 1, 2.

Every boundary listed above runs counterclockwise, which is also the
orientation of :func:`nearcoupon.embedding.boundary`.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .embedding import EmbeddedGraph, compact, delete_edge, delete_vertex, trace_faces
from .errors import BadParameter, GenerationFailed, UnknownFamily

FAMILIES = ("K3", "K4", "diamond", "3sun", "wheel", "fan", "octahedron", "icosahedron")
RETRY_BUDGET = 1000


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int | None = None
    seed: int = 0
    dmin: int = 3

    def build(self) -> EmbeddedGraph:
        if self.family == "triangulation":
            return random_triangulation(self.n, self.seed)
        if self.family in ("near-triangulation", "near_triangulation"):
            return random_near_triangulation(self.n, self.seed, self.dmin)
        return named(self.family, self.n)


def embed_straight_line(coords: Mapping[int, tuple[float, float]], edges: Sequence[tuple[int, int]]) -> EmbeddedGraph:
    """Rotation system of a crossing-free straight-line drawing.

    The outer face of each component is the traced face of largest signed
    area (the only counterclockwise one).
    """
    nbrs: dict[int, list[int]] = {v: [] for v in coords}
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    rot = {}
    for v, ns in nbrs.items():
        x0, y0 = coords[v]
        rot[v] = tuple(sorted(ns, key=lambda u: math.atan2(coords[u][1] - y0, coords[u][0] - x0)))
    g = EmbeddedGraph(rot)
    best: dict[int, tuple[float, tuple[int, ...]]] = {}
    comp_of = {v: i for i, comp in enumerate(g.components()) for v in comp}
    for f in trace_faces(g):
        w = f.walk
        area = sum(
            coords[w[i]][0] * coords[w[(i + 1) % len(w)]][1] - coords[w[(i + 1) % len(w)]][0] * coords[w[i]][1]
            for i in range(len(w))
        )
        c = comp_of[w[0]]
        if c not in best or area > best[c][0]:
            best[c] = (area, w)
    outer = set()
    for _, w in best.values():
        outer.update((w[i], w[(i + 1) % len(w)]) for i in range(len(w)))
    return EmbeddedGraph(rot, outer)


def _polygon(k: int, radius: float = 10.0, phase: float = math.pi / 2) -> list[tuple[float, float]]:
    return [(radius * math.cos(phase + 2 * math.pi * i / k), radius * math.sin(phase + 2 * math.pi * i / k)) for i in range(k)]


def _schlegel(points: Sequence[tuple[float, float, float]], face: Sequence[int]) -> EmbeddedGraph:
    """Straight-line drawing of a centred convex polytope seen through ``face``."""
    dist = {}
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            dist[(i, j)] = math.dist(points[i], points[j])
    shortest = min(dist.values())
    edges = [e for e, d in dist.items() if d < shortest * 1.01]
    c = [sum(points[i][k] for i in face) / len(face) for k in range(3)]
    norm = math.sqrt(sum(x * x for x in c))
    nvec = [x / norm for x in c]
    d = sum(nvec[k] * c[k] for k in range(3))
    eye = [x * 1.05 for x in c]
    e1 = [points[face[0]][k] - c[k] for k in range(3)]
    l1 = math.sqrt(sum(x * x for x in e1))
    e1 = [x / l1 for x in e1]
    e2 = [nvec[1] * e1[2] - nvec[2] * e1[1], nvec[2] * e1[0] - nvec[0] * e1[2], nvec[0] * e1[1] - nvec[1] * e1[0]]
    coords = {}
    for i, x in enumerate(points):
        ray = [x[k] - eye[k] for k in range(3)]
        t = (d - sum(nvec[k] * eye[k] for k in range(3))) / sum(nvec[k] * ray[k] for k in range(3))
        y = [eye[k] + t * ray[k] - c[k] for k in range(3)]
        coords[i] = (sum(y[k] * e1[k] for k in range(3)), sum(y[k] * e2[k] for k in range(3)))
    return embed_straight_line(coords, edges)


def _relabel_outer_first(g: EmbeddedGraph) -> EmbeddedGraph:
    from .embedding import relabel

    walk = g.outer_walks()[0]
    order = list(walk) + [v for v in g.vertices() if v not in walk]
    return relabel(g, {v: i for i, v in enumerate(order)})


def named(family: str, n: int | None = None) -> EmbeddedGraph:
    fam = family.strip()
    key = fam.lower().replace("-", "").replace("_", "")
    if key == "k3":
        pts = _polygon(3)
        return embed_straight_line(dict(enumerate(pts)), [(0, 1), (1, 2), (2, 0)])
    if key == "k4":
        pts = dict(enumerate(_polygon(3)))
        pts[3] = (0.0, 0.0)
        return embed_straight_line(pts, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)])
    if key == "diamond":
        pts = {0: (0.0, -10.0), 1: (10.0, 0.0), 2: (0.0, 10.0), 3: (-10.0, 0.0)}
        return embed_straight_line(pts, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    if key in ("3sun", "sun"):
        pts = dict(enumerate(_polygon(6)))
        cyc = [(i, (i + 1) % 6) for i in range(6)]
        return embed_straight_line(pts, cyc + [(0, 2), (2, 4), (4, 0)])
    if key == "wheel":
        if n is None or n < 3:
            raise BadParameter("wheel needs n >= 3")
        pts = dict(enumerate(_polygon(n)))
        pts[n] = (0.0, 0.0)
        edges = [(i, (i + 1) % n) for i in range(n)] + [(i, n) for i in range(n)]
        return embed_straight_line(pts, edges)
    if key == "fan":
        if n is None or n < 2:
            raise BadParameter("fan needs n >= 2")
        pts = {i: (float(i), 0.0) for i in range(n)}
        pts[n] = ((n - 1) / 2.0, float(n))
        edges = [(i, i + 1) for i in range(n - 1)] + [(i, n) for i in range(n)]
        return embed_straight_line(pts, edges)
    if key == "octahedron":
        pts = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
        return _relabel_outer_first(_schlegel(pts, [0, 2, 4]))
    if key == "icosahedron":
        phi = (1 + math.sqrt(5)) / 2
        pts = []
        for a in (-1, 1):
            for b in (-phi, phi):
                pts += [(0, a, b), (a, b, 0), (b, 0, a)]
        face = _find_triangle(pts)
        return _relabel_outer_first(_schlegel(pts, face))
    raise UnknownFamily(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def _find_triangle(points) -> list[int]:
    k = len(points)
    dmin = min(math.dist(points[i], points[j]) for i in range(k) for j in range(i + 1, k))
    close = lambda i, j: math.dist(points[i], points[j]) < dmin * 1.01  # noqa: E731
    for i in range(k):
        for j in range(i + 1, k):
            for l in range(j + 1, k):
                if close(i, j) and close(j, l) and close(i, l):
                    return [i, j, l]
    raise GenerationFailed("no triangular face")


def random_triangulation(n: int, seed: int) -> EmbeddedGraph:
    """Stacked triangulation on ``n`` vertices followed by random diagonal flips."""
    if n is None or n < 4:
        raise BadParameter("random_triangulation needs n >= 4")
    rng = random.Random(f"triangulation:{n}:{seed}")
    k4 = named("K4")
    rot = {v: list(k4.rotation(v)) for v in k4.vertices()}
    outer = k4.outer_darts
    faces = [f.walk for f in trace_faces(k4) if not f.is_outer]
    for x in range(4, n):
        idx = rng.randrange(len(faces))
        a, b, c = faces[idx]
        # traced face a->b->c: succ_b(a)=c, succ_c(b)=a, succ_a(c)=b
        rot[b].insert(rot[b].index(a) + 1, x)
        rot[c].insert(rot[c].index(b) + 1, x)
        rot[a].insert(rot[a].index(c) + 1, x)
        rot[x] = [a, c, b]
        faces[idx] = (a, b, x)
        faces.append((b, c, x))
        faces.append((c, a, x))

    internal = [(u, v) for u in sorted(rot) for v in rot[u] if u < v and (u, v) not in outer and (v, u) not in outer]
    flips = rng.randint(n, 2 * n) if internal else 0
    done = attempts = 0
    while done < flips and attempts < 20 * flips:
        attempts += 1
        i = rng.randrange(len(internal))
        u, v = internal[i]
        ru, rv = rot[u], rot[v]
        x = rv[(rv.index(u) + 1) % len(rv)]
        y = ru[(ru.index(v) + 1) % len(ru)]
        if x == y or x in rot[y] or len(ru) <= 3 or len(rv) <= 3:
            continue
        ru.remove(v)
        rv.remove(u)
        # merged face u -> y -> v -> x; the new diagonal y-x enters after u at y and after v at x
        rot[y].insert(rot[y].index(u) + 1, x)
        rot[x].insert(rot[x].index(v) + 1, y)
        internal[i] = (min(x, y), max(x, y))
        done += 1
    return EmbeddedGraph(rot, outer)


def random_near_triangulation(n: int, seed: int, dmin: int = 3) -> EmbeddedGraph:
    """Near-triangulation on ``n`` vertices with minimum degree >= ``dmin``.

    Starts from a random triangulation with a few surplus vertices, deletes
    random boundary vertices and boundary edges (never pushing a degree below
    ``dmin``), and relabels densely.  An attempt that cannot shed its surplus
    vertices is retried with a derived seed and a smaller surplus.
    """
    if dmin not in (2, 3):
        raise BadParameter("dmin must be 2 or 3")
    if n is None or n < 3:
        raise BadParameter("random_near_triangulation needs n >= 3")
    if n == 3:
        if dmin == 3:
            raise BadParameter("no graph on 3 vertices has minimum degree 3")
        return named("K3")
    for attempt in range(RETRY_BUDGET):
        rng = random.Random(f"near:{n}:{seed}:{dmin}:{attempt}")
        # surplus shrinks on retries so a stuck run of attempts always ends
        extra = rng.randint(0, max(1, n // 3) >> (attempt // 2))
        g = random_triangulation(n + extra, rng.randrange(2**31))
        for _ in range(extra):
            bverts = sorted({v for w in g.outer_walks() for v in w})
            ok = [v for v in bverts if all(g.degree(u) > dmin for u in g.rotation(v))]
            if not ok:
                break
            g = delete_vertex(g, rng.choice(ok))
        if g.n != n:
            continue
        cuts = rng.randint(0, n // 2)
        for _ in range(cuts):
            cand = sorted({(min(a, b), max(a, b)) for a, b in g.outer_darts})
            u, v = rng.choice(cand)
            if g.degree(u) <= dmin or g.degree(v) <= dmin:
                continue
            g = delete_edge(g, u, v)
        if min(g.degree(v) for v in g.vertices()) >= dmin:
            return compact(g)[0]
    raise GenerationFailed(f"no near-triangulation with n={n}, dmin={dmin} after {RETRY_BUDGET} attempts")
