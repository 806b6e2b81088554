"""Pure-numpy fallback for the Volterra inner loop.

Same discretization as the compiled extension: Heun predictor-corrector with
a full-history trapezoidal memory sum, O(M^2) work.  Selected automatically
when the extension is unavailable or ``GAUSSBATH_PURE`` is set.
"""

import numpy as np


def heun_volterra(kernel, h):
    """Integrate v'(t) = -int_0^t kernel(t - s) v(s) ds with v(0) = 1.

    ``kernel`` holds the kernel sampled on the uniform grid j*h,
    j = 0 .. M; the returned array holds v on the same grid.
    """
    kernel = np.ascontiguousarray(kernel, dtype=np.complex128)
    M = kernel.shape[0] - 1
    v = np.empty(M + 1, dtype=np.complex128)
    v[0] = 1.0
    half_k0 = 0.5 * kernel[0]
    for j in range(M):
        if j == 0:
            rate = 0.0
        else:
            hist = np.dot(v[1:j], kernel[j - 1 : 0 : -1]) if j > 1 else 0.0
            rate = -h * (0.5 * kernel[j] * v[0] + hist + half_k0 * v[j])
        pred = v[j] + h * rate
        hist_next = np.dot(v[1 : j + 1], kernel[j:0:-1]) if j >= 1 else 0.0
        rate_next = -h * (0.5 * kernel[j + 1] * v[0] + hist_next + half_k0 * pred)
        v[j + 1] = v[j] + 0.5 * h * (rate + rate_next)
    return v
