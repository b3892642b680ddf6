"""Backend selection for the edit kernels.

The compiled extension is preferred; set ``CTXSPELL_PURE_PYTHON=1`` to force
the pure-Python fallback. ``BACKEND`` names whichever one was loaded.
"""
import os

from . import _pykernels

ASCII_LOWER = _pykernels.ASCII_LOWER

if os.environ.get("CTXSPELL_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

damerau_neighbors = _impl.damerau_neighbors
osa_distance = _impl.osa_distance
