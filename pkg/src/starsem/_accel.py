"""Kernel selection: numba-compiled loops or the pure-numpy fallback.

Set STARSEM_PURE_NUMPY=1 to force the numpy path (also taken automatically
when numba is not importable). `kernels.IMPL` says which one is live.
"""

from __future__ import annotations

import os

_force_numpy = os.environ.get("STARSEM_PURE_NUMPY", "0") not in ("", "0", "false")

if _force_numpy:
    from . import _kernels_np as kernels
else:
    try:
        from . import _kernels_nb as kernels
    except ImportError:  # numba missing or broken; fall back silently
        from . import _kernels_np as kernels

IMPL = kernels.IMPL
