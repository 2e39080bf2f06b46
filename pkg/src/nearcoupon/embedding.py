"""Planar graphs stored as rotation systems with a designated outer face.

Conventions
-----------
* ``rotation(v)`` lists the neighbours of ``v`` in counterclockwise order.
* Faces are traced by following a dart ``(u, v)`` with ``(v, succ_v(u))``
  where ``succ_v`` is the cyclic successor in ``rotation(v)``.  With
  counterclockwise rotations this walks every bounded face clockwise and the
  outer face counterclockwise, so the traced outer walk keeps the interior of
  the graph on its left.  That walk is the boundary cycle; its successor map
  is the "clockwise next boundary vertex" used by the independent-set rounds.
* The outer face is stored as the set of darts lying on it (one walk per
  connected component that has edges).  Every edit updates that set locally,
  so nothing needs a full re-trace.

Graphs are immutable: every edit returns a new :class:`EmbeddedGraph`.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    AlreadyAdjacent,
    NonSymmetricAdjacency,
    NotADisk,
    NotAnEmbedding,
    NotBoundaryEdge,
    NotOnFace,
    NotSimple,
    OuterFaceNotFound,
    UnknownVertex,
)

Dart = tuple[int, int]


class EmbeddedGraph:
    """A simple plane graph: rotation system plus the darts of the outer face."""

    __slots__ = ("_rot", "_outer", "_nedges")

    def __init__(self, rotations: Mapping[int, Sequence[int]], outer_darts: Iterable[Dart] = ()):
        self._rot = {int(v): tuple(int(u) for u in ns) for v, ns in rotations.items()}
        self._outer = frozenset((int(a), int(b)) for a, b in outer_darts)
        self._nedges = sum(len(ns) for ns in self._rot.values()) // 2

    @classmethod
    def _make(cls, rot: dict[int, tuple[int, ...]], outer: frozenset) -> "EmbeddedGraph":
        g = cls.__new__(cls)
        g._rot = rot
        g._outer = outer
        g._nedges = sum(len(ns) for ns in rot.values()) // 2
        return g

    # -- basic queries -------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._rot)

    @property
    def num_edges(self) -> int:
        return self._nedges

    @property
    def outer_darts(self) -> frozenset:
        return self._outer

    def vertices(self) -> list[int]:
        return sorted(self._rot)

    def __contains__(self, v: int) -> bool:
        return v in self._rot

    def rotation(self, v: int) -> tuple[int, ...]:
        return self._rot[v]

    neighbors = rotation

    def degree(self, v: int) -> int:
        return len(self._rot[v])

    def has_edge(self, u: int, v: int) -> bool:
        ns = self._rot.get(u)
        return ns is not None and v in ns

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u, ns in self._rot.items() for v in ns if u < v)

    def darts(self) -> list[Dart]:
        return sorted((u, v) for u, ns in self._rot.items() for v in ns)

    def succ(self, v: int, u: int) -> int:
        """Neighbour following ``u`` counterclockwise around ``v``."""
        ns = self._rot[v]
        return ns[(ns.index(u) + 1) % len(ns)]

    def pred(self, v: int, u: int) -> int:
        ns = self._rot[v]
        return ns[ns.index(u) - 1]

    def next_dart(self, dart: Dart) -> Dart:
        u, v = dart
        return (v, self.succ(v, u))

    def face_walk(self, dart: Dart) -> tuple[int, ...]:
        """Vertex sequence of the face containing ``dart``, starting at its tail."""
        start = dart
        walk = []
        d = dart
        while True:
            walk.append(d[0])
            d = self.next_dart(d)
            if d == start:
                return tuple(walk)

    def outer_walks(self) -> list[tuple[int, ...]]:
        """One walk per component with edges, each starting at its smallest dart."""
        seen: set[Dart] = set()
        walks = []
        for d in sorted(self._outer):
            if d in seen:
                continue
            walk = self.face_walk(d)
            seen.update(_walk_darts(walk))
            walks.append(walk)
        return walks

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for s in sorted(self._rot):
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self._rot[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def rotations(self) -> dict[int, tuple[int, ...]]:
        return dict(self._rot)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EmbeddedGraph):
            return NotImplemented
        return self._rot == other._rot and self._outer == other._outer

    def __hash__(self):
        return hash((frozenset(self._rot.items()), self._outer))

    def __repr__(self) -> str:
        return f"EmbeddedGraph(n={self.n}, m={self.num_edges}, outer={self.outer_walks()})"


@dataclass(frozen=True)
class Face:
    walk: tuple[int, ...]
    is_outer: bool = False

    @property
    def length(self) -> int:
        return len(self.walk)

    def darts(self) -> list[Dart]:
        return _walk_darts(self.walk)


@dataclass(frozen=True)
class BoundaryCycle:
    cycle: tuple[int, ...]
    succ: Mapping[int, int] = field(repr=False)

    def __contains__(self, v: int) -> bool:
        return v in self.succ

    def pred(self) -> dict[int, int]:
        return {b: a for a, b in self.succ.items()}


@dataclass
class ValidationReport:
    is_simple: bool
    is_planar_embedding: bool
    is_near_triangulation: bool
    is_triangulated_disk: bool
    is_triangulation: bool
    offending_face: tuple[int, ...] | None = None
    offending_vertex: int | None = None
    degree_histogram: dict[int, int] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "is_simple": self.is_simple,
            "is_planar_embedding": self.is_planar_embedding,
            "is_near_triangulation": self.is_near_triangulation,
            "is_triangulated_disk": self.is_triangulated_disk,
            "is_triangulation": self.is_triangulation,
            "offending_face": list(self.offending_face) if self.offending_face is not None else None,
            "offending_vertex": self.offending_vertex,
            "degree_histogram": {str(k): v for k, v in sorted(self.degree_histogram.items())},
        }


def _walk_darts(walk: Sequence[int]) -> list[Dart]:
    k = len(walk)
    return [(walk[i], walk[(i + 1) % k]) for i in range(k)]


def _cyclic_match(walk: Sequence[int], target: Sequence[int]) -> bool:
    if len(walk) != len(target):
        return False
    k = len(walk)
    t = tuple(target)
    for i in range(k):
        if walk[i] == t[0] and tuple(walk[i:]) + tuple(walk[:i]) == t:
            return True
    return False


def _check_simple(rot: Mapping[int, Sequence[int]]) -> None:
    for v, ns in rot.items():
        if v in ns:
            raise NotSimple(f"loop at vertex {v}")
        if len(set(ns)) != len(ns):
            raise NotSimple(f"repeated neighbour in rotation of {v}")
        for u in ns:
            if u not in rot:
                raise NonSymmetricAdjacency(f"vertex {v} lists unknown neighbour {u}")
            if v not in rot[u]:
                raise NonSymmetricAdjacency(f"{v} lists {u} but {u} does not list {v}")


def _euler_ok(g: EmbeddedGraph, faces: list[Face]) -> bool:
    face_of: dict[Dart, int] = {}
    for i, f in enumerate(faces):
        for d in f.darts():
            face_of[d] = i
    for comp in g.components():
        m = sum(g.degree(v) for v in comp) // 2
        if m == 0:
            continue
        nf = len({face_of[(u, w)] for u in comp for w in g.rotation(u)})
        if len(comp) - m + nf != 2:
            return False
    return True


def build_graph(
    rotations: Mapping[int, Sequence[int]] | Sequence[Sequence[int]],
    outer_face_walk: Sequence[int] | Sequence[Sequence[int]],
) -> EmbeddedGraph:
    """Validate a rotation system and mark the face matching ``outer_face_walk`` as outer.

    ``outer_face_walk`` is either one walk or a list of walks (one for each
    component with edges).  A walk may be given in either orientation; the
    traced orientation (interior on the left) is tried first.
    """
    if not isinstance(rotations, Mapping):
        rotations = {i: ns for i, ns in enumerate(rotations)}
    rot = {int(v): tuple(int(u) for u in ns) for v, ns in rotations.items()}
    _check_simple(rot)
    g = EmbeddedGraph._make(rot, frozenset())
    faces = trace_faces(g)
    if not _euler_ok(g, faces):
        raise NotAnEmbedding("rotation system does not describe a plane embedding (Euler check failed)")

    walks = list(outer_face_walk)
    if walks and not isinstance(walks[0], (list, tuple)):
        walks = [walks]
    outer: set[Dart] = set()
    for w in walks:
        w = [int(x) for x in w]
        if len(w) == 1 and w[0] in rot and not rot[w[0]]:
            continue
        match = next((f for f in faces if _cyclic_match(f.walk, w)), None)
        if match is None:
            rev = w[::-1]
            match = next((f for f in faces if _cyclic_match(f.walk, rev)), None)
        if match is None:
            raise OuterFaceNotFound(f"no face matches outer walk {w}")
        outer.update(match.darts())
    g = EmbeddedGraph._make(rot, frozenset(outer))
    covered = {d[0] for d in outer}
    for comp in g.components():
        if len(comp) > 1 and not covered.intersection(comp):
            raise OuterFaceNotFound(f"component containing {comp[0]} has no outer walk")
    if len(g.outer_walks()) != sum(1 for c in g.components() if len(c) > 1):
        raise OuterFaceNotFound("more than one outer walk given for a component")
    return g


def trace_faces(g: EmbeddedGraph) -> list[Face]:
    """All faces, discovered by scanning darts in ascending order."""
    seen: set[Dart] = set()
    faces = []
    for d in g.darts():
        if d in seen:
            continue
        walk = g.face_walk(d)
        ds = _walk_darts(walk)
        seen.update(ds)
        faces.append(Face(walk, d in g.outer_darts))
    return faces


def validate(g: EmbeddedGraph) -> ValidationReport:
    hist = dict(sorted(Counter(g.degree(v) for v in g.vertices()).items()))
    rep = ValidationReport(False, False, False, False, False, degree_histogram=hist)
    try:
        _check_simple(g._rot)
    except (NotSimple, NonSymmetricAdjacency):
        return rep
    rep.is_simple = True
    faces = trace_faces(g)
    rep.is_planar_embedding = _euler_ok(g, faces)
    if not rep.is_planar_embedding:
        return rep

    outer = g.outer_darts
    comps = g.components()
    edge_comps = [c for c in comps if len(c) > 1]
    outer_faces = [f for f in faces if f.is_outer]
    consistent = (
        len(outer_faces) == len(edge_comps)
        and all(set(f.darts()) <= outer for f in outer_faces)
        and sum(f.length for f in outer_faces) == len(outer)
    )
    if not consistent:
        rep.offending_face = outer_faces[0].walk if outer_faces else None
        return rep
    for f in faces:
        if not f.is_outer and f.length != 3:
            rep.offending_face = f.walk
            return rep
    rep.is_near_triangulation = True

    if len(comps) != 1 or g.n < 3:
        return rep
    walk = outer_faces[0].walk
    counts = Counter(walk)
    repeated = [v for v in walk if counts[v] > 1]
    if repeated:
        rep.offending_vertex = min(repeated)
        return rep
    rep.is_triangulated_disk = True
    rep.is_triangulation = len(walk) == 3
    return rep


def boundary(g: EmbeddedGraph) -> BoundaryCycle:
    walks = g.outer_walks()
    if len(walks) != 1 or len(g.components()) != 1:
        raise NotADisk("graph is not connected")
    walk = walks[0]
    if len(walk) < 3 or len(set(walk)) != len(walk):
        raise NotADisk(f"outer walk {walk} is not a simple cycle")
    i = walk.index(min(walk))
    cyc = walk[i:] + walk[:i]
    return BoundaryCycle(cyc, {cyc[k]: cyc[(k + 1) % len(cyc)] for k in range(len(cyc))})


# -- edits --------------------------------------------------------------------


def _without(ns: tuple[int, ...], x: int) -> tuple[int, ...]:
    i = ns.index(x)
    return ns[:i] + ns[i + 1:]


def _insert_after(ns: tuple[int, ...], anchor: int, x: int) -> tuple[int, ...]:
    i = ns.index(anchor)
    return ns[:i + 1] + (x,) + ns[i + 1:]


def delete_edge(g: EmbeddedGraph, u: int, v: int) -> EmbeddedGraph:
    """Remove edge ``uv``; the two faces on its sides merge."""
    if not g.has_edge(u, v):
        raise UnknownVertex(f"no edge {u}-{v}")
    outer = g.outer_darts
    if (u, v) in outer or (v, u) in outer:
        merged = set(_walk_darts(g.face_walk((u, v)))) | set(_walk_darts(g.face_walk((v, u))))
        merged -= {(u, v), (v, u)}
        outer = (outer - {(u, v), (v, u)}) | merged
    rot = dict(g._rot)
    rot[u] = _without(rot[u], v)
    rot[v] = _without(rot[v], u)
    return EmbeddedGraph._make(rot, frozenset(outer))


def delete_boundary_edge(g: EmbeddedGraph, e: tuple[int, int]) -> EmbeddedGraph:
    u, v = e
    if not g.has_edge(u, v) or ((u, v) not in g.outer_darts and (v, u) not in g.outer_darts):
        raise NotBoundaryEdge(f"{u}-{v} is not an edge of the outer face")
    return delete_edge(g, u, v)


def delete_vertex(g: EmbeddedGraph, v: int) -> EmbeddedGraph:
    """Remove ``v``; the faces around it merge into one face."""
    if v not in g:
        raise UnknownVertex(f"unknown vertex {v}")
    nbrs = g.rotation(v)
    outer = g.outer_darts
    around: set[Dart] = set()
    for u in nbrs:
        around.update(_walk_darts(g.face_walk((v, u))))
    if around & outer:
        outer = outer | around
    outer = frozenset(d for d in outer if v not in d)
    rot = dict(g._rot)
    del rot[v]
    for u in nbrs:
        rot[u] = _without(rot[u], v)
    return EmbeddedGraph._make(rot, outer)


def delete_vertices(g: EmbeddedGraph, vs: Iterable[int]) -> EmbeddedGraph:
    for v in vs:
        g = delete_vertex(g, v)
    return g


def split_face(
    g: EmbeddedGraph,
    walk: Sequence[int],
    i: int,
    j: int,
    outer_keep: Dart | None = None,
) -> EmbeddedGraph:
    """Insert the edge ``walk[i]``-``walk[j]`` through the face traced by ``walk``.

    The edge enters the corners of the walk at positions ``i`` and ``j``.
    When the face is the outer face, the part containing ``outer_keep`` stays
    outer; without a hint the longer part does.
    """
    k = len(walk)
    u, w = walk[i], walk[j]
    if u == w:
        raise NotOnFace("both endpoints are the same vertex")
    if g.has_edge(u, w):
        raise AlreadyAdjacent(f"{u} and {w} are already adjacent")
    pu, pw = walk[i - 1], walk[j - 1]
    rot = dict(g._rot)
    rot[u] = _insert_after(rot[u], pu, w) if rot[u] else (w,)
    rot[w] = _insert_after(rot[w], pw, u) if rot[w] else (u,)
    outer = g.outer_darts
    first = (walk[i], walk[(i + 1) % k])
    if first in outer:
        # walk from u: u, w, walk[j+1], ..., walk[i-1]; and w, u, walk[i+1], ..., walk[j-1]
        part1 = [u] + [walk[(j + t) % k] for t in range((i - j) % k)]
        part2 = [w] + [walk[(i + t) % k] for t in range((j - i) % k)]
        d1, d2 = set(_walk_darts(part1)), set(_walk_darts(part2))
        if outer_keep is not None:
            keep = d1 if outer_keep in d1 else d2
        else:
            keep = d1 if len(part1) >= len(part2) else d2
        outer = (outer - set(_walk_darts(walk))) | keep
    return EmbeddedGraph._make(rot, frozenset(outer))


def _face_arg(g: EmbeddedGraph, f) -> tuple[int, ...]:
    if isinstance(f, Face):
        return f.walk
    return tuple(f)


def add_edge_in_face(g: EmbeddedGraph, u: int, w: int, f, outer_keep: Dart | None = None) -> EmbeddedGraph:
    walk = _face_arg(g, f)
    if u not in walk or w not in walk:
        raise NotOnFace(f"{u} and {w} do not both lie on face {walk}")
    if g.has_edge(u, w):
        raise AlreadyAdjacent(f"{u} and {w} are already adjacent")
    return split_face(g, walk, walk.index(u), walk.index(w), outer_keep)


def induced_subgraph(
    g: EmbeddedGraph, keep: Iterable[int], drop_edges: Iterable[tuple[int, int]] = ()
) -> EmbeddedGraph:
    """Restrict the embedding to ``keep``, also dropping ``drop_edges``.

    Only valid when the dropped part touches the kept part along the outer
    face (components, bridges, blocks at a cut vertex): the surviving outer
    darts then form the outer walk of every child.
    """
    keep = set(keep)
    dropped = set()
    for a, b in drop_edges:
        dropped.add((a, b))
        dropped.add((b, a))
    rot = {
        v: tuple(u for u in g._rot[v] if u in keep and (v, u) not in dropped)
        for v in sorted(keep)
    }
    outer = frozenset(d for d in g.outer_darts if d[0] in keep and d[1] in keep and d not in dropped)
    return EmbeddedGraph._make(rot, outer)


def relabel(g: EmbeddedGraph, mapping: Mapping[int, int]) -> EmbeddedGraph:
    rot = {mapping[v]: tuple(mapping[u] for u in ns) for v, ns in g._rot.items()}
    outer = frozenset((mapping[a], mapping[b]) for a, b in g.outer_darts)
    return EmbeddedGraph._make(rot, outer)


def compact(g: EmbeddedGraph) -> tuple[EmbeddedGraph, dict[int, int]]:
    """Relabel to dense ids 0..n-1 preserving order; returns (graph, old->new)."""
    mapping = {v: i for i, v in enumerate(g.vertices())}
    return relabel(g, mapping), mapping
