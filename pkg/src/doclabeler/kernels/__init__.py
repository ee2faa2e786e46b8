"""Image kernels with a compiled core and a numpy fallback.

The Cython extension is preferred when it imported cleanly; set
DOCLABELER_KERNELS=py to force the fallback (used by the benchmark and the
backend-equivalence tests).
"""

import os

from . import fallback

if os.environ.get("DOCLABELER_KERNELS") == "py":
    _impl = fallback
    BACKEND = "numpy"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = fallback
        BACKEND = "numpy"

resize_bilinear = _impl.resize_bilinear
binarize = _impl.binarize
histogram256 = _impl.histogram256

__all__ = ["BACKEND", "resize_bilinear", "binarize", "histogram256", "fallback"]
