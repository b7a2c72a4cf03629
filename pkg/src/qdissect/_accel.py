"""numba switch.

Set ``QDISSECT_DISABLE_NUMBA=1`` to force the pure-numpy kernels even when
numba is importable.
"""

from __future__ import annotations

import functools
import os

_FLAG = os.environ.get("QDISSECT_DISABLE_NUMBA", "").strip().lower()

try:
    if _FLAG in ("1", "true", "yes", "on"):
        raise ImportError("numba disabled by QDISSECT_DISABLE_NUMBA")
    import numba as nb
except ImportError:
    nb = None

HAVE_NUMBA = nb is not None

if HAVE_NUMBA:
    njit = functools.partial(nb.njit, cache=True, nogil=True)
else:
    njit = None
