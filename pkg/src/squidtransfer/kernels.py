"""Selects the series kernel at import time.

The compiled ``_ckernels`` extension is used when it was built; otherwise
the numpy implementation in ``_pykernels`` takes over.  Setting
``SQUIDTRANSFER_PURE_PYTHON=1`` forces the fallback.
"""
import os

from . import _pykernels

BACKEND = "python"
abd_series = _pykernels.abd_series

if not os.environ.get("SQUIDTRANSFER_PURE_PYTHON"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        abd_series = _ckernels.abd_series
        BACKEND = "cython"

__all__ = ["abd_series", "BACKEND"]
