"""Optional numba acceleration for hot numeric kernels.

Kernels are written once as plain Python/NumPy functions and decorated with
:func:`maybe_njit`.  By default they are compiled with ``numba.njit``.  Setting
the environment variable ``SIMFARM_NO_NUMBA=1`` (checked at import time)
selects the pure-Python/NumPy path instead; the same happens automatically
when numba is not installed.  Either way the decorated object exposes
``.py_func`` so benchmarks can time both paths side by side.
"""

from __future__ import annotations

import os

__all__ = ["USING_NUMBA", "maybe_njit"]


def _numba_disabled() -> bool:
    flag = os.environ.get("SIMFARM_NO_NUMBA", "").strip().lower()
    return flag not in ("", "0", "false", "no")


USING_NUMBA = False
_njit = None

if not _numba_disabled():
    try:
        from numba import njit as _njit  # type: ignore[no-redef]

        USING_NUMBA = True
    except ImportError:  # pragma: no cover - exercised via SIMFARM_NO_NUMBA
        _njit = None


def maybe_njit(*args, **kwargs):
    """``numba.njit`` when acceleration is on, identity decorator otherwise.

    Usable both bare (``@maybe_njit``) and with options
    (``@maybe_njit(cache=True)``).
    """
    if args and callable(args[0]) and not kwargs:
        return maybe_njit()(args[0])

    def decorate(func):
        if USING_NUMBA:
            return _njit(*args, **kwargs)(func)
        func.py_func = func
        return func

    return decorate
