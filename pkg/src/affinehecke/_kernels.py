"""
Batched integer kernels over stacks of affine-permutation windows.

Every kernel takes an ``(n, r)`` int64 array whose rows are windows
``(w(1), ..., w(r))``.  Two implementations exist for each kernel: a numba
``@njit`` loop and a vectorized numpy expression.  The numba path is used when
numba imports and ``AFFINEHECKE_DISABLE_NUMBA`` is not set to a truthy value.
"""

import os

import numpy as np

__all__ = ["BACKEND", "lengths", "descents", "omega_degrees",
           "lengths_numpy", "descents_numpy", "lengths_numba", "descents_numba"]


def _numba_requested() -> bool:
    return os.environ.get("AFFINEHECKE_DISABLE_NUMBA", "").lower() not in ("1", "true", "yes")


try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None


def lengths_numpy(windows: np.ndarray) -> np.ndarray:
    w = np.asarray(windows, dtype=np.int64)
    n, r = w.shape
    if r < 2:
        return np.zeros(n, dtype=np.int64)
    diff = w[:, None, :] - w[:, :, None]          # diff[a, i, j] = w(j) - w(i)
    iu, ju = np.triu_indices(r, k=1)
    return np.abs(np.floor_divide(diff[:, iu, ju], r)).sum(axis=1)


def descents_numpy(windows: np.ndarray) -> np.ndarray:
    w = np.asarray(windows, dtype=np.int64)
    n, r = w.shape
    out = np.zeros((n, r), dtype=np.bool_)
    if r < 2:
        return out
    out[:, 0] = w[:, r - 1] - r > w[:, 0]
    out[:, 1:] = w[:, :-1] > w[:, 1:]
    return out


if njit is not None:
    @njit(cache=True)
    def lengths_numba(windows):
        n, r = windows.shape
        out = np.zeros(n, dtype=np.int64)
        for a in range(n):
            total = 0
            for i in range(r):
                wi = windows[a, i]
                for j in range(i + 1, r):
                    total += abs((windows[a, j] - wi) // r)
            out[a] = total
        return out

    @njit(cache=True)
    def descents_numba(windows):
        n, r = windows.shape
        out = np.zeros((n, r), dtype=np.bool_)
        if r < 2:
            return out
        for a in range(n):
            out[a, 0] = windows[a, r - 1] - r > windows[a, 0]
            for i in range(1, r):
                out[a, i] = windows[a, i - 1] > windows[a, i]
        return out
else:  # pragma: no cover
    lengths_numba = lengths_numpy
    descents_numba = descents_numpy


BACKEND = "numba" if (njit is not None and _numba_requested()) else "numpy"

if BACKEND == "numba":
    _lengths, _descents = lengths_numba, descents_numba
else:
    _lengths, _descents = lengths_numpy, descents_numpy


def lengths(windows) -> np.ndarray:
    """Coxeter lengths of a stack of windows."""
    return _lengths(np.ascontiguousarray(windows, dtype=np.int64))


def descents(windows) -> np.ndarray:
    """Boolean ``(n, r)`` matrix; column ``i`` flags a right descent at ``s_i``."""
    return _descents(np.ascontiguousarray(windows, dtype=np.int64))


def omega_degrees(windows) -> np.ndarray:
    w = np.asarray(windows, dtype=np.int64)
    r = w.shape[1]
    shift = w.sum(axis=1) - r * (r + 1) // 2
    return shift // r
