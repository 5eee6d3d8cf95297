"""Hot-loop kernels: compiled extension with a pure-numpy fallback.

The compiled module is preferred when it imported cleanly; set the
environment variable ``ISACROM_PURE_PYTHON=1`` to force the fallback.
Both backends implement the same per-trial substream contract (see
``common.py``), so results agree across backends to floating-point noise
and are bit-identical across runs within a backend.
"""

from __future__ import annotations

import os

from . import pure
from .common import poisson_cdf_table

if os.environ.get("ISACROM_PURE_PYTHON"):
    impl = pure
    BACKEND = "pure"
else:
    try:
        from . import _native as impl  # type: ignore[no-redef]

        BACKEND = "native"
    except ImportError:
        impl = pure
        BACKEND = "pure"

__all__ = ["impl", "pure", "BACKEND", "poisson_cdf_table"]
