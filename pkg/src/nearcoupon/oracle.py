"""Ground truth: colouring checkers and exhaustive searches for small graphs.

Nothing here depends on the solver; the solver depends on :func:`check_coupon`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from . import kernels
from .embedding import EmbeddedGraph
from .errors import PartialColoring, TooLarge

COLORS = ("a", "b")
TWO_COLORING_LIMIT = 30
TDS_LIMIT_K2 = 30
TDS_LIMIT = 20
MIN_D3_LIMIT = 18


@dataclass
class SatisfactionReport:
    satisfied: bool
    violated: list[tuple[int, str]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.satisfied


def theorem_targets(g: EmbeddedGraph, special: Iterable[int] = ()) -> set[int]:
    """Vertices a good colouring must satisfy: all 3+-vertices plus ``special``."""
    return {v for v in g.vertices() if g.degree(v) >= 3} | set(special)


def check_coupon(g: EmbeddedGraph, targets: Iterable[int], f: Mapping[int, str]) -> SatisfactionReport:
    missing_vs = [v for v in g.vertices() if v not in f]
    if missing_vs:
        raise PartialColoring(f"{len(missing_vs)} vertices uncoloured, e.g. {missing_vs[:5]}")
    violated = []
    for v in sorted(targets):
        seen = {f[u] for u in g.neighbors(v)}
        if len(seen) < 2:
            violated.append((v, "".join(c for c in COLORS if c not in seen)))
    return SatisfactionReport(not violated, violated)


def _search(g: EmbeddedGraph, need_of, k: int):
    adj = {v: g.neighbors(v) for v in g.vertices()}
    ids, indptr, indices, _ = kernels.to_csr(adj)
    need = [need_of(v) for v in ids]
    res = kernels.coverage_search(len(ids), indptr, indices, need, k)
    if res is None:
        return None
    return {v: res[i] for i, v in enumerate(ids)}


def exhaustive_two_coloring(
    g: EmbeddedGraph, targets: Iterable[int], limit: int = TWO_COLORING_LIMIT
) -> dict[int, str] | None:
    """Lexicographically first 2-colouring (vertex ids ascending, ``a`` before
    ``b``) satisfying every target, or ``None`` when none of the ``2^n``
    colourings works."""
    if g.n > limit:
        raise TooLarge(f"{g.n} vertices exceeds the exhaustive-search cap of {limit}")
    tset = set(targets)
    res = _search(g, lambda v: 2 if v in tset else 0, 2)
    if res is None:
        return None
    return {v: COLORS[c] for v, c in res.items()}


def has_k_disjoint_tds(g: EmbeddedGraph, k: int, limit: int | None = None) -> bool:
    """Decide ``d_t(g) >= k``.

    A vertex outside all k sets can always be added to one of them without
    breaking total domination, so it suffices to search k-colourings in which
    every vertex sees all k colours.
    """
    if k < 1:
        return True
    if limit is None:
        limit = TDS_LIMIT_K2 if k <= 2 else TDS_LIMIT
    if g.n > limit:
        raise TooLarge(f"{g.n} vertices exceeds the cap of {limit} for k={k}")
    if k > 32:
        return False
    return _search(g, lambda v: k, k) is not None


def check_fair(gamma: EmbeddedGraph, protected: Iterable[tuple[int, int]], f4: Mapping[int, int]) -> bool:
    protected = list(protected)
    spanned = set()
    for u, v in protected:
        if f4[u] == f4[v]:
            return False
        spanned.update((u, v))
    for v in gamma.vertices():
        if v not in spanned and len({f4[u] for u in gamma.neighbors(v)}) < 3:
            return False
    return True


def check_min_d3_coloring(g: EmbeddedGraph, f4: Mapping[int, int]) -> bool:
    return all(len({f4[u] for u in g.neighbors(v)}) >= min(g.degree(v), 3) for v in g.vertices())


def search_min_d3_coloring(g: EmbeddedGraph, limit: int = MIN_D3_LIMIT) -> dict[int, int] | None:
    """First 4-colouring (colours 1..4) where each vertex sees min(d, 3) colours."""
    if g.n > limit:
        raise TooLarge(f"{g.n} vertices exceeds the cap of {limit}")
    res = _search(g, lambda v: min(g.degree(v), 3), 4)
    if res is None:
        return None
    return {v: c + 1 for v, c in res.items()}
