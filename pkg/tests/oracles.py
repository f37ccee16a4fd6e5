"""Independent reference implementations used as test oracles."""

import math

import mpmath
import numpy as np


def chi2_expected_counts(a, b, c, d):
    """Sum over the four cells of (observed - expected)^2 / expected."""
    obs = [[a, b], [c, d]]
    rows = [a + b, c + d]
    cols = [a + c, b + d]
    n = a + b + c + d
    if min(rows + cols) == 0:
        return 0.0
    total = mpmath.mpf(0)
    for i in range(2):
        for j in range(2):
            e = mpmath.mpf(rows[i]) * cols[j] / n
            total += (obs[i][j] - e) ** 2 / e
    return float(total)


def chi2_df1_tail_quadrature(x):
    """Upper tail of the df=1 chi-squared density by numerical integration."""
    with mpmath.workdps(30):
        dens = lambda t: mpmath.exp(-t / 2) / mpmath.sqrt(2 * mpmath.pi * t)
        if x == 0:
            return 1.0
        return float(mpmath.quad(dens, [x, x + 1, x + 10, mpmath.inf]))


def exhaustive_max_chi2(t, F, M):
    """Largest Pearson statistic over every feasible split a + c = t."""
    lo, hi = max(0, t - M), min(t, F)
    if hi < lo:
        return 0.0
    a = np.arange(lo, hi + 1, dtype=np.float64)
    c = t - a
    b, d = F - a, M - c
    n = F + M
    denom = (a + b) * (c + d) * (a + c) * (b + d)
    with np.errstate(divide="ignore", invalid="ignore"):
        chi = np.where(denom > 0, n * (a * d - b * c) ** 2 / denom, 0.0)
    return float(chi.max())


def bh_literal(pvalues, alpha):
    """Set of indices rejected by the step-up rule, straight from its definition."""
    m = len(pvalues)
    order = sorted(range(m), key=lambda i: (pvalues[i], i))
    k = 0
    for rank in range(1, m + 1):
        if pvalues[order[rank - 1]] <= rank * alpha / m:
            k = rank
    return set(order[:k])


def logistic(x):
    return 1.0 / (1.0 + math.exp(-x))


def logit(p):
    return math.log(p / (1.0 - p))
