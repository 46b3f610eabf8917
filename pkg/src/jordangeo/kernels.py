"""Kernel backend selection.

The compiled extension is used when it was built; set ``JORDANGEO_PURE=1``
to force the pure-Python fallback.
"""

import os

if os.environ.get("JORDANGEO_PURE"):
    from jordangeo import _core_py as _impl

    BACKEND = "python"
else:
    try:
        from jordangeo import _core as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        from jordangeo import _core_py as _impl

        BACKEND = "python"

matmul = _impl.matmul
row_reduce = _impl.row_reduce

__all__ = ["BACKEND", "matmul", "row_reduce"]
