"""Pure-Python implementations of the hot kernels.

These are the reference versions; :mod:`shadowjones._ckernels` mirrors them
with typed loops.  Both must return identical results.
"""

import math


def convolve(a, b):
    """Integer convolution of two coefficient lists."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def log_qfact_table(d):
    """``out[j] = log |[j]!|`` at ``t = exp(2 pi i / d)`` for ``0 <= j < d``."""
    out = [0.0] * d
    if d < 2:
        return out
    base = math.log(math.sin(math.pi / d))
    acc = 0.0
    for m in range(1, d):
        acc += math.log(math.sin(math.pi * m / d)) - base
        out[m] = acc
    return out


def log_binomial_power_sum(k, d, power):
    """``log sum_j |[k choose j]|**power`` at ``exp(2 pi i / d)``, for ``k < d``."""
    lf = log_qfact_table(d)
    logs = [power * (lf[k] - lf[j] - lf[k - j]) for j in range(k + 1)]
    top = max(logs)
    return top + math.log(math.fsum(math.exp(x - top) for x in logs))
