"""Backend selection for the hot kernels.

The compiled extension is used when it was built; otherwise (or when
``RTSSS_PURE_PYTHON=1`` is set) the numpy fallback is loaded. Both expose
``FieldOps``, ``enumerate_keys`` and ``enumerate_keys_xor``.
"""

import os

if os.environ.get("RTSSS_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        from . import _kernels_py as _impl

FieldOps = _impl.FieldOps
enumerate_keys = _impl.enumerate_keys
enumerate_keys_xor = _impl.enumerate_keys_xor
BACKEND = _impl.BACKEND

__all__ = ["FieldOps", "enumerate_keys", "enumerate_keys_xor", "BACKEND"]
