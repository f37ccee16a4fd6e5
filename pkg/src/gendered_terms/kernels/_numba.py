"""numba-compiled implementations of the association kernels."""

import math

import numpy as np
from numba import njit

NAME = "numba"

_OPTS = dict(nogil=True, cache=True, fastmath=False)


@njit(**_OPTS)
def _chi2(a, b, c, d):
    denom = (a + b) * (c + d) * (a + c) * (b + d)
    if denom <= 0.0:
        return 0.0
    diff = a * d - b * c
    return (a + b + c + d) * diff * diff / denom


@njit(**_OPTS)
def _chi2_loop(a, b, c, d, out):
    for i in range(out.size):
        out[i] = _chi2(a[i], b[i], c[i], d[i])


@njit(**_OPTS)
def _max_chi2_loop(t, f, m, out):
    for i in range(out.size):
        ti = t[i]
        fi = f[i]
        mi = m[i]
        lo = max(0.0, ti - mi)
        hi = min(ti, fi)
        x = _chi2(lo, fi - lo, ti - lo, mi - (ti - lo))
        y = _chi2(hi, fi - hi, ti - hi, mi - (ti - hi))
        out[i] = x if x > y else y


@njit(**_OPTS)
def _sf_loop(x, out):
    for i in range(out.size):
        v = x[i]
        if v < 0.0:
            v = 0.0
        out[i] = math.erfc(math.sqrt(0.5 * v))


@njit(**_OPTS)
def _bh_loop(p_sorted, alpha):
    m = p_sorted.size
    for k in range(m, 0, -1):
        if p_sorted[k - 1] <= alpha * k / m:
            return k
    return 0


def _prep(*arrays):
    bcast = np.broadcast_arrays(*[np.asarray(x, dtype=np.float64) for x in arrays])
    shape = bcast[0].shape
    return shape, [np.array(x, dtype=np.float64, order="C").ravel() for x in bcast]


def chi2_many(a, b, c, d):
    shape, (a, b, c, d) = _prep(a, b, c, d)
    out = np.empty(a.size, dtype=np.float64)
    _chi2_loop(a, b, c, d, out)
    return out.reshape(shape)


def max_chi2_many(t, female_total, male_total):
    shape, (t, f, m) = _prep(t, female_total, male_total)
    out = np.empty(t.size, dtype=np.float64)
    _max_chi2_loop(t, f, m, out)
    return out.reshape(shape)


def chi2_sf_many(x):
    shape, (x,) = _prep(x)
    out = np.empty(x.size, dtype=np.float64)
    _sf_loop(x, out)
    return out.reshape(shape)


def bh_count(p_sorted, alpha):
    p_sorted = np.ascontiguousarray(p_sorted, dtype=np.float64)
    if p_sorted.size == 0:
        return 0
    return int(_bh_loop(p_sorted, float(alpha)))
