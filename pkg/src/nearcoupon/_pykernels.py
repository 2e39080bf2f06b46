"""Pure-Python search kernels (fallback for the compiled ``_ckernels``).

Both kernels take the graph in CSR form over vertices ``0..n-1``.
The two implementations must return identical results for identical input.
"""
from __future__ import annotations

FOUND, INFEASIBLE, BUDGET = 0, 1, 2


def _popcount(x: int) -> int:
    return bin(x).count("1")


def coverage_search(n, indptr, indices, need, k):
    """First (lexicographic, vertex 0 most significant) k-colouring in which
    every vertex ``t`` sees at least ``need[t]`` distinct colours among its
    neighbours.  Returns a list of colours in ``0..k-1`` or ``None``.

    A vertex's requirement is checked when its highest-indexed neighbour is
    coloured; that neighbour's admissible colours are narrowed first, so dead
    branches are cut one level early.  Colours are tried in restricted-growth
    order, which never changes the first solution found.
    """
    full = (1 << k) - 1
    trig = [[] for _ in range(n)]
    for t in range(n):
        r = need[t]
        if r <= 0:
            continue
        lo, hi = indptr[t], indptr[t + 1]
        if hi - lo < r:
            return None
        trig[max(indices[lo:hi])].append(t)

    colors = [-1] * n
    amask = [0] * n
    nextc = [0] * n
    maxused = [-1] * (n + 1)
    i = 0
    entering = True
    while True:
        if i == n:
            return colors
        if entering:
            mask = full
            for t in trig[i]:
                seen = 0
                for p in range(indptr[t], indptr[t + 1]):
                    u = indices[p]
                    if u != i:
                        seen |= 1 << colors[u]
                have = _popcount(seen)
                r = need[t]
                if have >= r:
                    continue
                if have + 1 == r:
                    mask &= full & ~seen
                else:
                    mask = 0
                    break
            amask[i] = mask
            nextc[i] = 0
        limit = min(k, maxused[i] + 2)
        c = nextc[i]
        mask = amask[i]
        while c < limit and not (mask >> c) & 1:
            c += 1
        if c < limit:
            colors[i] = c
            nextc[i] = c + 1
            maxused[i + 1] = c if c > maxused[i] else maxused[i]
            i += 1
            entering = True
        else:
            colors[i] = -1
            i -= 1
            if i < 0:
                return None
            entering = False


def dsatur_color(n, indptr, indices, ncolors, budget):
    """Exact backtracking colouring with saturation-degree vertex choice.

    Returns ``(colors, nodes, status)``; ``status`` is FOUND, INFEASIBLE or
    BUDGET.  ``nodes`` counts colour assignments made.
    """
    if n == 0:
        return [], 0, FOUND
    deg = [indptr[v + 1] - indptr[v] for v in range(n)]
    cnt = [[0] * ncolors for _ in range(n)]
    sat = [0] * n
    colors = [-1] * n
    order = [0] * n
    nextc = [0] * n
    maxused = [-1] * (n + 1)
    nodes = 0
    depth = 0
    entering = True
    while True:
        if depth == n:
            return colors, nodes, FOUND
        if entering:
            best = -1
            bs = bd = -1
            for v in range(n):
                if colors[v] < 0 and (sat[v] > bs or (sat[v] == bs and deg[v] > bd)):
                    best, bs, bd = v, sat[v], deg[v]
            order[depth] = best
            nextc[depth] = 0
        v = order[depth]
        limit = min(ncolors, maxused[depth] + 2)
        c = nextc[depth]
        cv = cnt[v]
        while c < limit and cv[c]:
            c += 1
        if c < limit:
            nodes += 1
            if nodes > budget:
                return None, nodes, BUDGET
            colors[v] = c
            nextc[depth] = c + 1
            for p in range(indptr[v], indptr[v + 1]):
                u = indices[p]
                cu = cnt[u]
                if cu[c] == 0:
                    sat[u] += 1
                cu[c] += 1
            maxused[depth + 1] = c if c > maxused[depth] else maxused[depth]
            depth += 1
            entering = True
        else:
            depth -= 1
            if depth < 0:
                return None, nodes, INFEASIBLE
            v = order[depth]
            c = colors[v]
            colors[v] = -1
            for p in range(indptr[v], indptr[v + 1]):
                u = indices[p]
                cu = cnt[u]
                cu[c] -= 1
                if cu[c] == 0:
                    sat[u] -= 1
            entering = False
