"""Backend selection for the search kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module is.  Setting ``NEARCOUPON_PURE_PYTHON=1`` forces the fallback.
"""
from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("NEARCOUPON_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

FOUND, INFEASIBLE, BUDGET = _pykernels.FOUND, _pykernels.INFEASIBLE, _pykernels.BUDGET

coverage_search = _impl.coverage_search
dsatur_color = _impl.dsatur_color


def to_csr(adj: dict[int, tuple[int, ...]] | dict[int, list[int]]) -> tuple[list[int], list[int], list[int], list[int]]:
    """Flatten an adjacency dict to CSR over vertices renumbered by ascending id.

    Returns ``(ids, indptr, indices, degrees)`` where ``ids[i]`` is the
    original id of position ``i``.
    """
    ids = sorted(adj)
    pos = {v: i for i, v in enumerate(ids)}
    indptr = [0]
    indices: list[int] = []
    for v in ids:
        indices.extend(sorted(pos[u] for u in adj[v]))
        indptr.append(len(indices))
    degrees = [indptr[i + 1] - indptr[i] for i in range(len(ids))]
    return ids, indptr, indices, degrees
