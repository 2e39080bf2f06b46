from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from nearcoupon import _pykernels, kernels
from nearcoupon.generators import named, random_near_triangulation, random_triangulation

_ck = pytest.importorskip("nearcoupon._ckernels", reason="compiled extension not built")


def csr(g):
    return kernels.to_csr({v: g.neighbors(v) for v in g.vertices()})


def test_to_csr_renumbers_by_id():
    ids, indptr, indices, deg = kernels.to_csr({5: [7], 7: [5, 9], 9: [7]})
    assert ids == [5, 7, 9]
    assert indptr == [0, 1, 3, 4]
    assert indices == [1, 0, 2, 1]
    assert deg == [1, 2, 1]


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")


small = st.one_of(
    st.builds(random_triangulation, st.integers(4, 14), st.integers(0, 10**6)),
    st.builds(random_near_triangulation, st.integers(4, 14), st.integers(0, 10**6), st.sampled_from([2, 3])),
)


@settings(max_examples=80, deadline=None)
@given(small, st.integers(2, 4), st.data())
def test_coverage_search_backends_agree(g, k, data):
    ids, indptr, indices, deg = csr(g)
    need = [data.draw(st.integers(0, min(d, k))) for d in deg]
    a = _pykernels.coverage_search(len(ids), indptr, indices, need, k)
    b = _ck.coverage_search(len(ids), indptr, indices, need, k)
    assert a == b
    if a is not None:
        for t, r in enumerate(need):
            assert len({a[indices[p]] for p in range(indptr[t], indptr[t + 1])}) >= r


@settings(max_examples=40, deadline=None)
@given(st.builds(random_triangulation, st.integers(4, 60), st.integers(0, 10**6)), st.sampled_from([3, 4]))
def test_dsatur_backends_agree(g, ncolors):
    ids, indptr, indices, _ = csr(g)
    a = _pykernels.dsatur_color(len(ids), indptr, indices, ncolors, 10**5)
    b = _ck.dsatur_color(len(ids), indptr, indices, ncolors, 10**5)
    assert a == b
    colors, _, status = a
    if status == kernels.FOUND:
        for v in range(len(ids)):
            for p in range(indptr[v], indptr[v + 1]):
                assert colors[v] != colors[indices[p]]


def test_dsatur_reports_infeasible_and_budget():
    ids, indptr, indices, _ = csr(named("K4"))
    for mod in (_pykernels, _ck):
        _, _, status = mod.dsatur_color(4, indptr, indices, 3, 10**4)
        assert status == kernels.INFEASIBLE
        _, nodes, status = mod.dsatur_color(4, indptr, indices, 4, 2)
        assert status == kernels.BUDGET and nodes <= 3


def test_pure_python_switch(monkeypatch):
    import importlib

    monkeypatch.setenv("NEARCOUPON_PURE_PYTHON", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python"
        assert mod.coverage_search is _pykernels.coverage_search
    finally:
        monkeypatch.delenv("NEARCOUPON_PURE_PYTHON")
        importlib.reload(kernels)
