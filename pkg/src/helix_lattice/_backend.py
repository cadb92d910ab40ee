"""Kernel backend selection and worker configuration.

The compiled extension is preferred when it was built at install time; the
NumPy fallback is functionally identical.  Set ``HELIX_LATTICE_PURE=1`` to
force the fallback (used by the benchmark for side-by-side timing).
"""

from __future__ import annotations

import os

if os.environ.get("HELIX_LATTICE_PURE", "") == "1":
    from . import _kernels_py as _impl

    BACKEND_NAME = "pure"
else:
    try:
        from . import _kernels as _impl  # compiled at install time

        BACKEND_NAME = "compiled"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND_NAME = "pure"

svp_search = _impl.svp_search
pair_cross_min_sq = _impl.pair_cross_min_sq
helix_distance = _impl.helix_distance
tube_filter = _impl.tube_filter


def backend_name() -> str:
    return BACKEND_NAME


def worker_count() -> int:
    """Worker cap from HELIX_LATTICE_THREADS (0 = one per CPU, unset = 1)."""
    raw = os.environ.get("HELIX_LATTICE_THREADS", "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        return 1
    if n == 0:
        return os.cpu_count() or 1
    return max(1, n)
