# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loop for the Volterra amplitude equation.

Heun predictor-corrector with a full-history trapezoidal memory sum; the two
history dot products per step are fused into one pass over the stored values.
"""

import numpy as np


def heun_volterra(const double complex[::1] kernel, double h):
    """Integrate v'(t) = -int_0^t kernel(t - s) v(s) ds with v(0) = 1."""
    cdef Py_ssize_t M = kernel.shape[0] - 1
    out = np.empty(M + 1, dtype=np.complex128)
    cdef double complex[::1] v = out
    cdef Py_ssize_t j, m
    cdef double complex hist, hist_next, rate, rate_next, pred, half_k0
    v[0] = 1.0
    half_k0 = 0.5 * kernel[0]
    for j in range(M):
        hist = 0.0
        hist_next = 0.0
        for m in range(1, j):
            hist = hist + kernel[j - m] * v[m]
            hist_next = hist_next + kernel[j + 1 - m] * v[m]
        if j >= 1:
            hist_next = hist_next + kernel[1] * v[j]
        if j == 0:
            rate = 0.0
        else:
            rate = -h * (0.5 * kernel[j] * v[0] + hist + half_k0 * v[j])
        pred = v[j] + h * rate
        rate_next = -h * (0.5 * kernel[j + 1] * v[0] + hist_next + half_k0 * pred)
        v[j + 1] = v[j] + 0.5 * h * (rate + rate_next)
    return out
