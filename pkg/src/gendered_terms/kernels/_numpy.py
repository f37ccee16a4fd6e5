"""Pure numpy implementations of the association kernels."""

import numpy as np
from scipy.special import erfc

NAME = "numpy"


def chi2_many(a, b, c, d):
    """Pearson chi-squared for many 2x2 tables; degenerate margins give 0."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    d = np.asarray(d, dtype=np.float64)
    n = a + b + c + d
    denom = (a + b) * (c + d) * (a + c) * (b + d)
    diff = a * d - b * c
    out = np.zeros(np.broadcast(a, b, c, d).shape, dtype=np.float64)
    ok = denom > 0
    np.divide(n * diff * diff, denom, out=out, where=ok)
    return out


def max_chi2_many(t, female_total, male_total):
    # chi2 is convex in the female cell count for fixed margins, so the
    # maximum over feasible splits sits at one of the two endpoints.
    t = np.asarray(t, dtype=np.float64)
    f = np.asarray(female_total, dtype=np.float64)
    m = np.asarray(male_total, dtype=np.float64)
    lo = np.maximum(0.0, t - m)
    hi = np.minimum(t, f)
    at_lo = chi2_many(lo, f - lo, t - lo, m - (t - lo))
    at_hi = chi2_many(hi, f - hi, t - hi, m - (t - hi))
    return np.maximum(at_lo, at_hi)


def chi2_sf_many(x):
    """Upper tail of the chi-squared distribution with one degree of freedom."""
    x = np.asarray(x, dtype=np.float64)
    return erfc(np.sqrt(np.maximum(x, 0.0) * 0.5))


def bh_count(p_sorted, alpha):
    """Number of Benjamini-Hochberg rejections for ascending p-values."""
    p_sorted = np.asarray(p_sorted, dtype=np.float64)
    m = p_sorted.size
    if m == 0:
        return 0
    thresholds = alpha * np.arange(1, m + 1) / m
    hits = np.flatnonzero(p_sorted <= thresholds)
    return int(hits[-1] + 1) if hits.size else 0
