"""Hot gate-application kernels with two interchangeable backends.

All kernels mutate a C-contiguous (batch, 2**n) complex128 block in place,
one row per statevector. The numba backend jit-compiles the loop bodies;
the numpy backend uses vectorized slicing and serves as the fallback when
numba is unavailable. The two agree to floating-point rounding (numpy's
vectorized complex multiply may differ from the scalar sequence by an ulp);
each backend on its own is fully deterministic.

Selection happens once at import time via the VQGF_BACKEND environment
variable ("numba" or "numpy"). Default is numba when importable.
"""

import os

import numpy as np

_ENV_VAR = "VQGF_BACKEND"


def _numpy_apply_1q(batch, m00, m01, m10, m11, stride):
    view = batch.reshape(batch.shape[0], -1, 2, stride)
    a0 = view[:, :, 0, :]
    a1 = view[:, :, 1, :]
    n0 = m00 * a0 + m01 * a1
    n1 = m10 * a0 + m11 * a1
    view[:, :, 0, :] = n0
    view[:, :, 1, :] = n1


_PAIR_INDEX_CACHE = {}


def _numpy_apply_ctrl_x(batch, cmask, stride):
    d = batch.shape[1]
    key = (d, cmask, stride)
    pair = _PAIR_INDEX_CACHE.get(key)
    if pair is None:
        idx = np.arange(d)
        lo = idx[((idx & stride) == 0) & ((idx & cmask) == cmask)]
        pair = (lo, lo + stride)
        _PAIR_INDEX_CACHE[key] = pair
    lo, hi = pair
    tmp = batch[:, lo].copy()
    batch[:, lo] = batch[:, hi]
    batch[:, hi] = tmp


def _loop_apply_1q(batch, m00, m01, m10, m11, stride):
    nrows, d = batch.shape
    step = 2 * stride
    for r in range(nrows):
        row = batch[r]
        for base in range(0, d, step):
            for i0 in range(base, base + stride):
                i1 = i0 + stride
                a0 = row[i0]
                a1 = row[i1]
                row[i0] = m00 * a0 + m01 * a1
                row[i1] = m10 * a0 + m11 * a1


def _loop_apply_ctrl_x(batch, cmask, stride):
    nrows, d = batch.shape
    step = 2 * stride
    for r in range(nrows):
        row = batch[r]
        for base in range(0, d, step):
            for i0 in range(base, base + stride):
                if (i0 & cmask) == cmask:
                    i1 = i0 + stride
                    row[i0], row[i1] = row[i1], row[i0]


NUMPY_KERNELS = {
    "apply_1q": _numpy_apply_1q,
    "apply_ctrl_x": _numpy_apply_ctrl_x,
}


def make_numba_kernels():
    """Jit-compile the loop kernels. Raises ImportError without numba."""
    from numba import njit

    jit = njit(cache=True, nogil=True)
    return {
        "apply_1q": jit(_loop_apply_1q),
        "apply_ctrl_x": jit(_loop_apply_ctrl_x),
    }


def _select_backend():
    requested = os.environ.get(_ENV_VAR, "").strip().lower()
    if requested not in ("", "numba", "numpy"):
        raise ValueError(
            f"{_ENV_VAR} must be 'numba' or 'numpy', got {requested!r}"
        )
    if requested == "numpy":
        return "numpy", NUMPY_KERNELS
    try:
        return "numba", make_numba_kernels()
    except ImportError:
        if requested == "numba":
            raise
        return "numpy", NUMPY_KERNELS


BACKEND, _ACTIVE = _select_backend()

apply_1q = _ACTIVE["apply_1q"]
apply_ctrl_x = _ACTIVE["apply_ctrl_x"]
