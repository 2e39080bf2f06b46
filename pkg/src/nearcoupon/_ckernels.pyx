# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; same contract as ``_pykernels``."""
from libc.stdlib cimport malloc, calloc, free

FOUND, INFEASIBLE, BUDGET = 0, 1, 2


cdef inline int _popcount(unsigned int x):
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


cdef int* _to_carray(seq, Py_ssize_t size) except NULL:
    cdef int* out = <int*> malloc((size if size > 0 else 1) * sizeof(int))
    if out == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(size):
        out[i] = seq[i]
    return out


def coverage_search(int n, indptr, indices, need, int k):
    cdef int* ip = _to_carray(indptr, n + 1)
    cdef int* ix = _to_carray(indices, indptr[n] if n > 0 else 0)
    cdef int* nd = _to_carray(need, n)
    cdef int* trig_cnt = <int*> calloc(n + 1, sizeof(int))
    cdef int* trig_ptr = <int*> calloc(n + 1, sizeof(int))
    cdef int* trig = <int*> malloc((n if n > 0 else 1) * sizeof(int))
    cdef int* lastn = <int*> malloc((n if n > 0 else 1) * sizeof(int))
    cdef int* colors = <int*> malloc((n if n > 0 else 1) * sizeof(int))
    cdef unsigned int* amask = <unsigned int*> malloc((n if n > 0 else 1) * sizeof(unsigned int))
    cdef int* nextc = <int*> malloc((n if n > 0 else 1) * sizeof(int))
    cdef int* maxused = <int*> malloc((n + 1) * sizeof(int))
    cdef unsigned int full = (1u << k) - 1u
    cdef int t, p, u, i, c, r, have, limit, lo, hi, m
    cdef unsigned int seen, mask
    cdef bint entering, ok = True
    result = None
    try:
        for t in range(n):
            lastn[t] = -1
            r = nd[t]
            if r <= 0:
                continue
            lo = ip[t]
            hi = ip[t + 1]
            if hi - lo < r:
                ok = False
                break
            m = -1
            for p in range(lo, hi):
                if ix[p] > m:
                    m = ix[p]
            lastn[t] = m
            trig_cnt[m] += 1
        if not ok:
            return None
        for i in range(n):
            trig_ptr[i + 1] = trig_ptr[i] + trig_cnt[i]
            trig_cnt[i] = 0
        for t in range(n):
            if lastn[t] >= 0:
                m = lastn[t]
                trig[trig_ptr[m] + trig_cnt[m]] = t
                trig_cnt[m] += 1
        for i in range(n):
            colors[i] = -1
        maxused[0] = -1
        i = 0
        entering = True
        while True:
            if i == n:
                result = [colors[t] for t in range(n)]
                break
            if entering:
                mask = full
                for p in range(trig_ptr[i], trig_ptr[i + 1]):
                    t = trig[p]
                    seen = 0
                    for lo in range(ip[t], ip[t + 1]):
                        u = ix[lo]
                        if u != i:
                            seen |= 1u << colors[u]
                    have = _popcount(seen)
                    r = nd[t]
                    if have >= r:
                        continue
                    if have + 1 == r:
                        mask &= full & ~seen
                    else:
                        mask = 0
                        break
                amask[i] = mask
                nextc[i] = 0
            limit = maxused[i] + 2
            if limit > k:
                limit = k
            c = nextc[i]
            mask = amask[i]
            while c < limit and not ((mask >> c) & 1u):
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
                    break
                entering = False
        return result
    finally:
        free(ip); free(ix); free(nd); free(trig_cnt); free(trig_ptr); free(trig)
        free(lastn); free(colors); free(amask); free(nextc); free(maxused)


def dsatur_color(int n, indptr, indices, int ncolors, long long budget):
    if n == 0:
        return [], 0, FOUND
    cdef int* ip = _to_carray(indptr, n + 1)
    cdef int* ix = _to_carray(indices, indptr[n])
    cdef int* deg = <int*> malloc(n * sizeof(int))
    cdef int* cnt = <int*> calloc(n * ncolors, sizeof(int))
    cdef int* sat = <int*> calloc(n, sizeof(int))
    cdef int* colors = <int*> malloc(n * sizeof(int))
    cdef int* order = <int*> malloc(n * sizeof(int))
    cdef int* nextc = <int*> malloc(n * sizeof(int))
    cdef int* maxused = <int*> malloc((n + 1) * sizeof(int))
    cdef long long nodes = 0
    cdef int depth = 0, v, u, c, p, best, bs, bd, limit, status
    cdef bint entering = True
    try:
        for v in range(n):
            deg[v] = ip[v + 1] - ip[v]
            colors[v] = -1
        maxused[0] = -1
        while True:
            if depth == n:
                return [colors[v] for v in range(n)], nodes, FOUND
            if entering:
                best = -1
                bs = -1
                bd = -1
                for v in range(n):
                    if colors[v] < 0 and (sat[v] > bs or (sat[v] == bs and deg[v] > bd)):
                        best = v
                        bs = sat[v]
                        bd = deg[v]
                order[depth] = best
                nextc[depth] = 0
            v = order[depth]
            limit = maxused[depth] + 2
            if limit > ncolors:
                limit = ncolors
            c = nextc[depth]
            while c < limit and cnt[v * ncolors + c]:
                c += 1
            if c < limit:
                nodes += 1
                if nodes > budget:
                    return None, nodes, BUDGET
                colors[v] = c
                nextc[depth] = c + 1
                for p in range(ip[v], ip[v + 1]):
                    u = ix[p]
                    if cnt[u * ncolors + c] == 0:
                        sat[u] += 1
                    cnt[u * ncolors + c] += 1
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
                for p in range(ip[v], ip[v + 1]):
                    u = ix[p]
                    cnt[u * ncolors + c] -= 1
                    if cnt[u * ncolors + c] == 0:
                        sat[u] -= 1
                entering = False
    finally:
        free(ip); free(ix); free(deg); free(cnt); free(sat); free(colors)
        free(order); free(nextc); free(maxused)
