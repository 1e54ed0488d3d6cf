"""Kernel backend selection.

The compiled extension is used when it was built; otherwise the pure
Python module is loaded.  Set ``UNIPINV_PURE_PYTHON=1`` to force the
fallback (the benchmark and the kernel tests do this).
"""
from __future__ import annotations

import os

if os.environ.get("UNIPINV_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as kernels
else:
    try:
        from . import _ckernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _pykernels as kernels

BACKEND = kernels.NAME
mul_terms = kernels.mul_terms
add_terms = kernels.add_terms
echelon = kernels.echelon
