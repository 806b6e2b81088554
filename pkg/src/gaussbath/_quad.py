"""Adaptive Gauss-Legendre quadrature used by the spectral-density routines."""

import numpy as np
from numpy.polynomial.legendre import leggauss

_NODES, _WEIGHTS = leggauss(24)


def _panel(fun, lo, hi):
    x = 0.5 * (hi - lo) * _NODES + 0.5 * (hi + lo)
    return 0.5 * (hi - lo) * np.sum(_WEIGHTS * fun(x))


def adaptive_gauss(fun, a, b, abs_tol=1e-12, max_depth=48):
    """Integrate ``fun`` (vectorized, real or complex) over [a, b].

    Panels are bisected until the 24-point Gauss estimate of a panel agrees
    with the sum over its halves to the locally allotted tolerance.
    """
    stack = [(a, b, _panel(fun, a, b), abs_tol, 0)]
    total = 0.0 + 0.0j
    while stack:
        lo, hi, whole, tol, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _panel(fun, lo, mid)
        right = _panel(fun, mid, hi)
        if abs(whole - (left + right)) < tol or depth >= max_depth:
            total += left + right
        else:
            stack.append((lo, mid, left, 0.5 * tol, depth + 1))
            stack.append((mid, hi, right, 0.5 * tol, depth + 1))
    if abs(total.imag) == 0.0:
        return total.real
    return total


def semi_infinite(fun, scale, abs_tol=1e-12, tail=50.0):
    """Integrate ``fun`` over [0, inf) via the mapping w = scale*s/(1-s).

    ``tail`` truncates the map at w = tail*scale, adequate whenever the
    integrand decays at least like exp(-w/scale).
    """
    s_max = tail / (tail + 1.0)

    def mapped(s):
        w = scale * s / (1.0 - s)
        return fun(w) * scale / (1.0 - s) ** 2

    return adaptive_gauss(mapped, 0.0, s_max, abs_tol=abs_tol)
