"""Hot-kernel backend selection.

The compiled extension is preferred; set ``DRIFTMOO_PURE_PYTHON=1`` to force
the NumPy fallback (useful for debugging and for benchmarking both backends).
"""

from __future__ import annotations

import os

if os.environ.get("DRIFTMOO_PURE_PYTHON"):
    from . import _fallback as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _fallback as _impl  # type: ignore[no-redef]

BACKEND: str = _impl.BACKEND
front_ranks = _impl.front_ranks
crowding = _impl.crowding
rmnk_eval = _impl.rmnk_eval

__all__ = ["BACKEND", "front_ranks", "crowding", "rmnk_eval"]
