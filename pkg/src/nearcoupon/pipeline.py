"""Two-colouring of an irreducible triangulated disk.

Irreducible means: 2-connected, at least five vertices, no two consecutive
boundary 4+-vertices, every 2-vertex is special and has only 4+-neighbours.

Steps:

1. an independent set ``I`` of 4- vertices built in three rounds;
2. contraction: delete the members of ``I`` one at a time (ascending id),
   closing up each neighbourhood into a triangle (or keeping the edge of a
   2-vertex) and protecting the edges among former neighbours;
3. a fair four-colouring of the contracted graph, merged to two colours by
   pairing the four colours;
4. a repair loop that recolours members of ``I`` until every target vertex
   sees both colours.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

from . import fair, oracle
from .embedding import EmbeddedGraph, boundary, delete_vertex, split_face, trace_faces, _euler_ok
from .errors import InternalInvariantViolation, NotADisk, PreconditionViolated
from .timing import PhaseTimer, phase

PAIRINGS = (((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3)))


class PlanarityViolation(InternalInvariantViolation):
    pass


class NoValidPairing(InternalInvariantViolation):
    pass


class MixedMissingColors(InternalInvariantViolation):
    pass


class NoProgress(InternalInvariantViolation):
    pass


@dataclass
class IndependentSet:
    members: list[int]
    rounds: dict[int, int]

    def __contains__(self, v: int) -> bool:
        return v in self.rounds

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)


@dataclass
class DeletedVertex:
    neighbors: tuple[int, ...]
    boundary: bool
    protected: tuple[int, ...]  # T_v (3 vertices) or the edge of a 2-vertex
    added_edge: tuple[int, int] | None = None


@dataclass
class ContractionResult:
    gprime: EmbeddedGraph
    protected: list[tuple[int, int]]
    records: dict[int, DeletedVertex]

    @property
    def protected_vertices(self) -> set[int]:
        return fair.protected_vertices(self.protected)

    def as_dict(self) -> dict:
        return {
            "gprime": {str(v): list(self.gprime.rotation(v)) for v in self.gprime.vertices()},
            "protected": [list(e) for e in self.protected],
            "deleted": {
                str(v): {"neighbors": list(r.neighbors), "T": list(r.protected), "added_edge": r.added_edge}
                for v, r in sorted(self.records.items())
            },
        }


@dataclass
class PipelineAudit:
    """Collects invariant checks over every irreducible instance solved."""

    keep_dumps: bool = False
    max_dumps: int | None = None
    instances: int = 0
    checks: int = 0
    violations: list[str] = field(default_factory=list)
    dumps: list[dict] = field(default_factory=list)
    stats: fair.SearchStats = field(default_factory=fair.SearchStats)
    repair_iterations: list[int] = field(default_factory=list)

    def expect(self, ok: bool, what: str) -> None:
        self.checks += 1
        if not ok:
            self.violations.append(what)


def _sorted_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def check_irreducible(g: EmbeddedGraph, special: Iterable[int] = ()) -> list[int]:
    """Raise PreconditionViolated unless ``g`` is irreducible; returns its boundary cycle."""
    try:
        cyc = boundary(g).cycle
    except NotADisk as exc:
        raise PreconditionViolated(f"not a triangulated disk: {exc}") from exc
    if g.n < 5:
        raise PreconditionViolated("fewer than 5 vertices")
    special = set(special)
    k = len(cyc)
    for i in range(k):
        u, w = cyc[i], cyc[(i + 1) % k]
        if g.degree(u) >= 4 and g.degree(w) >= 4:
            raise PreconditionViolated(f"consecutive boundary 4+-vertices {u}, {w}")
    onb = set(cyc)
    for v in cyc:
        d = g.degree(v)
        if d == 2:
            if v not in special:
                raise PreconditionViolated(f"2-vertex {v} is not special")
            if any(g.degree(u) <= 3 for u in g.neighbors(v)):
                raise PreconditionViolated(f"2-vertex {v} has a 3- neighbour")
        if d == 3:
            bn = {cyc[(cyc.index(v) + 1) % k], cyc[cyc.index(v) - 1]}
            for u in g.neighbors(v):
                if u in onb and u not in bn and g.degree(u) == 3:
                    raise PreconditionViolated(f"chord between boundary 3-vertices {v}, {u}")
    return list(cyc)


def build_independent_set(g: EmbeddedGraph, special: Iterable[int] | None = None) -> IndependentSet:
    if special is None:
        special = [v for v in g.vertices() if g.degree(v) == 2]
    cyc = check_irreducible(g, special)
    k = len(cyc)
    rounds: dict[int, int] = {}
    blocked: set[int] = set()

    def take(v: int, r: int) -> None:
        rounds[v] = r
        blocked.add(v)
        blocked.update(g.neighbors(v))

    for i, v in enumerate(cyc):
        if g.degree(v) >= 4:
            nxt = cyc[(i + 1) % k]
            rounds[nxt] = 1
    for v in list(rounds):
        blocked.add(v)
        blocked.update(g.neighbors(v))
    for v in sorted(cyc):
        if g.degree(v) <= 3 and v not in blocked:
            take(v, 2)
    for v in g.vertices():
        if g.degree(v) <= 4 and v not in blocked:
            take(v, 3)
    ind = IndependentSet(sorted(rounds), rounds)
    problems = independent_set_violations(g, ind, cyc)
    if problems:
        raise InternalInvariantViolation("independent set: " + "; ".join(problems))
    return ind


def independent_set_violations(g: EmbeddedGraph, ind: IndependentSet, cyc: list[int] | None = None) -> list[str]:
    if cyc is None:
        cyc = boundary(g).cycle
    onb = set(cyc)
    out = []
    for v in ind:
        if any(u in ind for u in g.neighbors(v)):
            out.append(f"{v} has a neighbour in I")
        if g.degree(v) > 4:
            out.append(f"{v} has degree {g.degree(v)}")
        if v in onb and g.degree(v) >= 4:
            out.append(f"boundary 4+-vertex {v} in I")
    for v in g.vertices():
        d = g.degree(v)
        if d == 2 and v not in ind:
            out.append(f"2-vertex {v} missing from I")
        if d <= 4 and v not in ind and not any(u in ind for u in g.neighbors(v)):
            out.append(f"I not maximal at {v}")
    return out


def contract(g: EmbeddedGraph, ind: IndependentSet | Iterable[int]) -> ContractionResult:
    members = sorted(ind)
    onb = {v for w in g.outer_walks() for v in w}
    h = g
    protected: set[tuple[int, int]] = set()
    records: dict[int, DeletedVertex] = {}
    for v in members:
        nb = g.rotation(v)
        if h.rotation(v) != nb:
            raise InternalInvariantViolation(f"neighbourhood of {v} changed during contraction")
        d = len(nb)
        added = None
        if d == 2 or (d == 3 and v not in onb):
            h = delete_vertex(h, v)
        elif d == 3:
            # boundary neighbours p -> v -> q on the outer walk
            p = next(u for u in nb if (u, v) in h.outer_darts)
            q = next(u for u in nb if (v, u) in h.outer_darts)
            x = next(u for u in nb if u not in (p, q))
            h = delete_vertex(h, v)
            if not h.has_edge(p, q):
                walk = h.face_walk((p, x))
                if walk[:3] != (p, x, q) or (p, x) not in h.outer_darts:
                    raise PlanarityViolation(f"outer face around deleted {v} is not {p}, {x}, {q}")
                h = split_face(h, walk, 0, 2, outer_keep=(p, q))
                added = (p, q) if p < q else (q, p)
        elif d == 4 and v not in onb:
            a = nb[0]
            nxt = g.succ(a, v)
            h = delete_vertex(h, v)
            walk = h.face_walk((a, nxt))
            if len(walk) != 4 or set(walk) != set(nb):
                raise PlanarityViolation(f"deleting {v} did not leave a 4-face")
            diag = sorted(
                _sorted_edge(walk[i], walk[i + 2]) for i in (0, 1) if not h.has_edge(walk[i], walk[i + 2])
            )
            if not diag:
                raise PlanarityViolation(f"both diagonals around {v} already present")
            s, t = diag[0]
            h = split_face(h, walk, walk.index(s), walk.index(t))
            added = diag[0]
        else:
            raise PreconditionViolated(f"vertex {v} of degree {d} cannot be contracted")
        for u, w in combinations(sorted(nb), 2):
            if h.has_edge(u, w):
                protected.add((u, w))
        if d == 2:
            tv = tuple(sorted(nb))
        else:
            tv = next(
                (t for t in combinations(sorted(nb), 3) if h.has_edge(t[0], t[1]) and h.has_edge(t[1], t[2]) and h.has_edge(t[0], t[2])),
                (),
            )
        records[v] = DeletedVertex(tuple(nb), v in onb, tv, added)
    if not _euler_ok(h, trace_faces(h)):
        raise PlanarityViolation("contracted graph fails the Euler check")
    return ContractionResult(h, sorted(protected), records)


def choose_pairing(f4: Mapping[int, int], constraints: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], tuple[int, int]]:
    """Least pairing of the colours 1..4 that separates the two colours of every constraint edge."""
    cons = [(f4[u], f4[w]) for u, w in constraints]
    for pairing in PAIRINGS:
        if all(not ({a, b} <= set(pairing[0]) or {a, b} <= set(pairing[1])) for a, b in cons):
            return pairing
    raise NoValidPairing(f"no pairing separates colour pairs {cons}")


def merge_to_two_coloring(
    f4: Mapping[int, int], contraction: ContractionResult, special: Iterable[int] = ()
) -> dict[int, str]:
    """Partial two-colouring of V(G) minus I: colours of the pair holding 1 become ``a``."""
    special = set(special)
    cons = [r.protected for v, r in sorted(contraction.records.items()) if len(r.neighbors) == 2 and v in special]
    first, _ = choose_pairing(f4, cons)
    return {v: ("a" if c in first else "b") for v, c in sorted(f4.items())}


def _sees_both(g: EmbeddedGraph, f: Mapping[int, str], u: int, ignore: int | None = None) -> bool:
    seen = set()
    for y in g.neighbors(u):
        if y != ignore:
            seen.add(f[y])
            if len(seen) == 2:
                return True
    return False


def repair(
    g: EmbeddedGraph,
    ind: Iterable[int],
    f2_partial: Mapping[int, str],
    special: Iterable[int] | None = None,
    audit: PipelineAudit | None = None,
) -> dict[int, str]:
    """Colour ``I`` with ``a``, then recolour members of ``I`` until every target is satisfied."""
    if special is None:
        special = [v for v in g.vertices() if g.degree(v) == 2]
    targets = oracle.theorem_targets(g, special)
    members = sorted(ind)
    f = dict(f2_partial)
    for v in members:
        f[v] = "a"
    iterations = 0
    while True:
        v = next(
            (v for v in members if any(u in targets and not _sees_both(g, f, u) for u in g.neighbors(v))),
            None,
        )
        if v is None:
            break
        iterations += 1
        if iterations > g.n:
            raise NoProgress(f"repair exceeded {g.n} iterations")
        local = [u for u in g.neighbors(v) if u in targets]
        before = sum(1 for u in local if _sees_both(g, f, u))
        common = {"a", "b"}
        for u in local:
            if not _sees_both(g, f, u, ignore=v):
                seen = {f[y] for y in g.neighbors(u) if y != v}
                common &= {"a", "b"} - seen
        if not common:
            raise MixedMissingColors(f"neighbours of {v} miss different colours")
        f[v] = "a" if "a" in common else "b"
        after = sum(1 for u in local if _sees_both(g, f, u))
        if after <= before:
            raise NoProgress(f"recolouring {v} did not grow the satisfied set")
    if audit is not None:
        audit.repair_iterations.append(iterations)
        audit.expect(iterations <= g.n, f"repair took {iterations} > |V| iterations")
    return f


def audit_contraction(g: EmbeddedGraph, ind: IndependentSet, res: ContractionResult, audit: PipelineAudit) -> None:
    for v in ind:
        nb = g.neighbors(v)
        for u, w in combinations(nb, 2):
            common = (set(g.neighbors(u)) & set(g.neighbors(w))) - {v}
            audit.expect(bool(common), f"no second common neighbour of {u}, {w} around {v}")
    prot = res.protected_vertices
    pset = set(res.protected)
    gp = res.gprime
    for v in gp.vertices():
        if v not in prot:
            audit.expect(gp.degree(v) >= 5, f"unprotected {v} has degree {gp.degree(v)} in G'")
    for v, r in res.records.items():
        if len(r.neighbors) == 2:
            audit.expect(_sorted_edge(*r.protected) in pset, f"edge of 2-vertex {v} not protected")
        else:
            t = r.protected
            ok = len(t) == 3 and all(_sorted_edge(a, b) in pset and gp.has_edge(a, b) for a, b in combinations(t, 2))
            audit.expect(ok, f"T_{v} is not a protected triangle")
    audit.expect(set(gp.vertices()) == set(g.vertices()) - set(ind), "G' vertex set is not V minus I")
    for u, w in g.edges():
        if u not in ind and w not in ind:
            audit.expect(gp.has_edge(u, w), f"edge {u}-{w} of G minus I lost in G'")


def solve_irreducible(
    g: EmbeddedGraph,
    special: Iterable[int] = (),
    *,
    audit: PipelineAudit | None = None,
    timer: PhaseTimer | None = None,
    node_budget: int = fair.DEFAULT_NODE_BUDGET,
) -> dict[int, str]:
    special = sorted(special)
    with phase(timer, "independent_set"):
        ind = build_independent_set(g, special)
    with phase(timer, "contraction"):
        res = contract(g, ind)
    stats = audit.stats if audit is not None else None
    dump: dict | None = None
    if audit is not None and audit.keep_dumps and (audit.max_dumps is None or len(audit.dumps) < audit.max_dumps):
        dump = {}
    f4 = fair.fair_four_coloring(res.gprime, res.protected, node_budget, stats=stats, dump=dump, timer=timer)
    with phase(timer, "repair"):
        f2 = merge_to_two_coloring(f4, res, special)
        if audit is not None:
            audit.instances += 1
            problems = independent_set_violations(g, ind)
            audit.expect(not problems, "independent set: " + "; ".join(problems))
            audit_contraction(g, ind, res, audit)
            audit.expect(oracle.check_fair(res.gprime, res.protected, f4), "four-colouring is not fair")
            moves = stats.cut_moves[-1] if stats.cut_moves else 0
            audit.expect(moves <= res.gprime.num_edges, f"cut used {moves} moves > |E|")
            ext = dict(f2)
            for v in ind:
                ext[v] = "a"
            near = set(ind.members)
            for v in ind:
                near.update(g.neighbors(v))
            targets = oracle.theorem_targets(g, special)
            for v in g.vertices():
                if v not in near and v in targets:
                    audit.expect(_sees_both(g, ext, v), f"{v} outside N(I) unsatisfied after merge")
            if dump is not None:
                dump.update(res.as_dict())
                dump["I"] = {str(v): ind.rounds[v] for v in ind}
                dump["special"] = special
                audit.dumps.append(dump)
        f = repair(g, ind, f2, special, audit)
    return f
