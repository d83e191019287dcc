"""Selects the popularity-scan kernel at import time.

The compiled extension is preferred when it built successfully; the
numpy implementation is the fallback and the reference.  Both share one
calling convention (flat per-agent vote tables plus an assignment
matrix) and must return identical results on identical inputs.  Set
POPMATCH_PURE=1 to force the fallback, e.g. for benchmarking.
"""

from __future__ import annotations

import os

if os.environ.get("POPMATCH_PURE"):
    from popmatch._kernels._scan_py import first_negative

    BACKEND = "pure"
else:
    try:
        from popmatch._kernels._scan import first_negative  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from popmatch._kernels._scan_py import first_negative  # type: ignore[no-redef]

        BACKEND = "pure"

__all__ = ["BACKEND", "first_negative"]
