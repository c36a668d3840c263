"""Chooses the compiled kernels when available.

Set ``BOOBYTRAP_PURE_PYTHON=1`` to force the pure-Python versions.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
if os.environ.get("BOOBYTRAP_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _pykernels
else:
    _impl = _pykernels

enumerate_connected = _impl.enumerate_connected
mask_sums = _impl.mask_sums
scan_best = _impl.scan_best
