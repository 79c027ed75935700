"""Numba switch.

Kernels in :mod:`crisislens.kernels` are compiled with ``numba.njit`` unless
``CRISISLENS_NUMBA`` is set to ``0``/``false``/``off`` (or numba is missing),
in which case the pure-numpy implementations run instead. The flag is read
once at import time.
"""
import os

_FLAG = os.environ.get("CRISISLENS_NUMBA", "1").strip().lower()

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and _FLAG not in {"0", "false", "off", "no"}


def njit(func):
    if USE_NUMBA:
        return numba.njit(cache=True, nogil=True)(func)
    return func


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
