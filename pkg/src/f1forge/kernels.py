"""Select the compiled kernels when built, else the NumPy fallback.

Set ``F1FORGE_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
padic_abs_pow = _pykernels.padic_abs_pow
sphere_sum_pow = _pykernels.sphere_sum_pow

if not os.environ.get("F1FORGE_PURE"):
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        padic_abs_pow = _kernels.padic_abs_pow
        sphere_sum_pow = _kernels.sphere_sum_pow
        BACKEND = "compiled"
