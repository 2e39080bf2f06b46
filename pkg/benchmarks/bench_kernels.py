"""Compare the compiled search kernels with the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat R] [--json]

Each workload is a batch of kernel calls run through both backends on
identical CSR input; results must agree and the best of R runs is reported.
"""
from __future__ import annotations

import argparse
import json
import time

from nearcoupon import _pykernels, generators, kernels

try:
    from nearcoupon import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def _csr(g):
    adj = {v: g.neighbors(v) for v in g.vertices()}
    return kernels.to_csr(adj)


def workloads():
    """(name, kernel, list of argument tuples) per workload."""
    out = []
    tris = [generators.random_triangulation(n, seed) for n, seed in ((16 + s % 6, s) for s in range(60))]
    csrs = [_csr(g) for g in tris]
    out.append(("coverage: 3 disjoint TDS, 60 triangulations", "coverage_search", [(len(c[0]), c[1], c[2], [3] * len(c[0]), 3) for c in csrs]))
    out.append(("coverage: min(d,3) 4-colouring, 12 triangulations", "coverage_search", [(len(c[0]), c[1], c[2], [min(d, 3) for d in c[3]], 4) for c in csrs[:12]]))
    near = [_csr(generators.random_near_triangulation(24 + s % 6, s, 2)) for s in range(60)]
    out.append(("coverage: all-vertex 2-colouring, 60 near-tri", "coverage_search", [(len(c[0]), c[1], c[2], [2] * len(c[0]), 2) for c in near]))
    ico = _csr(generators.named("icosahedron"))
    out.append(("coverage: icosahedron 4 disjoint TDS (unsat)", "coverage_search", [(len(ico[0]), ico[1], ico[2], [4] * 12, 4)]))
    big = [_csr(generators.random_triangulation(n, seed)) for n, seed in ((200 + 20 * s, s) for s in range(10))]
    out.append(("dsatur: 10 triangulations n=200..380", "dsatur_color", [(len(c[0]), c[1], c[2], 4, 10**5) for c in big]))
    return out


def _run_all(fn, arglist):
    return [fn(*a) for a in arglist]


def _time(fn, arglist, repeat):
    best = float("inf")
    res = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        res = _run_all(fn, arglist)
        best = min(best, time.perf_counter() - t0)
    return best, res


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    rows = []
    for name, kname, arglist in workloads():
        tp, rp = _time(getattr(_pykernels, kname), arglist, args.repeat)
        row = {"workload": name, "python_s": round(tp, 6)}
        if _ckernels is not None:
            tc, rc = _time(getattr(_ckernels, kname), arglist, args.repeat)
            if kname == "dsatur_color":
                same = [(r[0], r[2]) for r in rc] == [(r[0], r[2]) for r in rp]
            else:
                same = rc == rp
            row.update(cython_s=round(tc, 6), speedup=round(tp / tc, 1) if tc > 0 else None, agree=same)
        rows.append(row)
    if args.json:
        print(json.dumps({"backend_available": _ckernels is not None, "rows": rows}, indent=2))
    else:
        print(f"{'workload':52s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s} agree")
        for r in rows:
            print(
                f"{r['workload']:52s} {r['python_s']:10.4f} {r.get('cython_s', float('nan')):10.4f} "
                f"{r.get('speedup') or float('nan'):8.1f} {r.get('agree', '-')}"
            )
    return 0 if all(r.get("agree", True) for r in rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
