# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in :mod:`shadowjones._pykernels`."""

from libc.math cimport sin, log, exp, M_PI
from libc.stdint cimport int64_t
from libc.stdlib cimport malloc, free

cdef extern from *:
    bint mul_overflow "__builtin_mul_overflow"(int64_t a, int64_t b, int64_t *res) nogil
    bint add_overflow "__builtin_add_overflow"(int64_t a, int64_t b, int64_t *res) nogil


def convolve(a, b):
    """Integer convolution; raises OverflowError if int64 is insufficient."""
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    if na == 0 or nb == 0:
        return []
    cdef int64_t *pa = <int64_t *>malloc(na * sizeof(int64_t))
    cdef int64_t *pb = <int64_t *>malloc(nb * sizeof(int64_t))
    cdef int64_t *po = <int64_t *>malloc((na + nb - 1) * sizeof(int64_t))
    cdef int64_t prod, x
    cdef bint bad = False
    try:
        for i in range(na):
            pa[i] = a[i]
        for j in range(nb):
            pb[j] = b[j]
        with nogil:
            for i in range(na + nb - 1):
                po[i] = 0
            for i in range(na):
                x = pa[i]
                if x == 0:
                    continue
                for j in range(nb):
                    if mul_overflow(x, pb[j], &prod) or add_overflow(po[i + j], prod, &po[i + j]):
                        bad = True
                        break
                if bad:
                    break
        if bad:
            raise OverflowError("int64 overflow in convolution")
        return [po[i] for i in range(na + nb - 1)]
    finally:
        free(pa)
        free(pb)
        free(po)


def log_qfact_table(int d):
    cdef int m
    cdef double acc = 0.0, base
    out = [0.0] * d
    if d < 2:
        return out
    base = log(sin(M_PI / d))
    for m in range(1, d):
        acc += log(sin(M_PI * m / d)) - base
        out[m] = acc
    return out


def log_binomial_power_sum(int k, int d, double power):
    cdef double *lf = <double *>malloc(d * sizeof(double))
    cdef double acc = 0.0, base, top, s, x
    cdef int m, j
    try:
        lf[0] = 0.0
        base = log(sin(M_PI / d))
        for m in range(1, d):
            acc += log(sin(M_PI * m / d)) - base
            lf[m] = acc
        top = -1e308
        for j in range(k + 1):
            x = power * (lf[k] - lf[j] - lf[k - j])
            if x > top:
                top = x
        s = 0.0
        for j in range(k + 1):
            s += exp(power * (lf[k] - lf[j] - lf[k - j]) - top)
        return top + log(s)
    finally:
        free(lf)
