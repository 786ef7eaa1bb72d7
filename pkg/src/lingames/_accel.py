"""Numba switch.

Kernels are compiled with numba when it is importable and the environment
variable ``LINGAMES_NO_NUMBA`` is unset (or set to ``0``/``false``).
Otherwise the pure-numpy implementations in :mod:`lingames._kernels` are used.
Both paths return identical results; the numba path is only faster.
"""

import os

try:
    import numba as _nb
except ImportError:  # pragma: no cover - depends on environment
    _nb = None

NUMBA_AVAILABLE = _nb is not None

_flag = os.environ.get("LINGAMES_NO_NUMBA", "").strip().lower()
USE_NUMBA = NUMBA_AVAILABLE and _flag in ("", "0", "false", "no")


def njit(*args, **kwargs):
    """``numba.njit`` when available, identity decorator otherwise."""
    if not NUMBA_AVAILABLE:
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f
    kwargs.setdefault("cache", True)
    kwargs.setdefault("nogil", True)
    return _nb.njit(*args, **kwargs)
