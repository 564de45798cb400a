"""Table kernels: the compiled extension when it is importable, else the
pure-Python fallback.  Set ``CWCOUNT_PURE_PYTHON=1`` to force the fallback."""

import os

from . import _kernels_py

if os.environ.get("CWCOUNT_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "cython"

convolve = _impl.convolve
remap = _impl.remap
apply_rows = _impl.apply_rows
filter_keys = _impl.filter_keys
