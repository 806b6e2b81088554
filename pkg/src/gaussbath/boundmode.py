"""Bound modes of the coupled system-reservoir spectrum and their residues.

A discrete level outside the reservoir band solves y(E) = E with
y(E) = omega0 - int J(w)/(w - E) dw.  Its residue
Z = 1 / (1 + int J(w)/(w - E_b)^2 dw) is the pole weight of the amplitude,
so |u(t -> inf)|^2 -> Z^2: a bound mode freezes the late-time decoherence.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .spectra import CavityArraySpectrum, OhmicFamilySpectrum, level_shift_integral

ROOT_RTOL = 1e-12
BRACKET_SPAN_LIMIT = 1e6


class BracketError(RuntimeError):
    """Geometric bracket expansion found no sign change (solver bug guard)."""


@dataclass(frozen=True)
class BoundMode:
    exists: bool
    E_b: float | None = None
    Z: float | None = None
    # all out-of-band roots as (energy, residue), largest residue first
    roots: tuple = ()


def spectral_function_y(model, mode, E):
    """y(E) = omega0 - int J(w)/(w - E) dw, defined outside the support."""
    return mode.omega0 - level_shift_integral(model, E, order=1)


def _residue(model, E_b):
    return 1.0 / (1.0 + level_shift_integral(model, E_b, order=2))


def _bracket_below(h, edge, unit):
    """Expand geometrically below ``edge`` until h changes sign."""
    hi = edge
    f_hi = h(hi)
    span = 0.5 * unit
    while span < BRACKET_SPAN_LIMIT * unit:
        lo = edge - span
        f_lo = h(lo)
        if f_lo == 0.0:
            return lo, lo
        if np.sign(f_lo) != np.sign(f_hi):
            return lo, hi
        hi, f_hi = lo, f_lo
        span *= 2
    raise BracketError(f"no sign change within {BRACKET_SPAN_LIMIT} frequency units below {edge}")


def _bracket_above(h, edge, unit):
    lo = edge
    f_lo = h(lo)
    span = 0.5 * unit
    while span < BRACKET_SPAN_LIMIT * unit:
        hi = edge + span
        f_hi = h(hi)
        if f_hi == 0.0:
            return hi, hi
        if np.sign(f_lo) != np.sign(f_hi):
            return lo, hi
        lo, f_lo = hi, f_hi
        span *= 2
    raise BracketError(f"no sign change within {BRACKET_SPAN_LIMIT} frequency units above {edge}")


def _solve_root(h, lo, hi):
    if lo == hi:
        return lo
    return brentq(h, lo, hi, rtol=ROOT_RTOL, maxiter=200)


def find_bound_mode(model, mode):
    """Locate every discrete root of y(E) = E outside the spectral support.

    Ohmic family: at most one root, on the negative axis, existing iff
    y(0) < 0.  Array: both sides of the band are searched; when several
    roots exist the one with the largest residue is designated primary.
    """
    h = lambda E: spectral_function_y(model, mode, E) - E
    if isinstance(model, OhmicFamilySpectrum):
        if h(0.0) >= 0.0:
            return BoundMode(exists=False)
        lo, hi = _bracket_below(h, 0.0, model.omega_c)
        E_b = _solve_root(h, lo, hi)
        Z = _residue(model, E_b)
        return BoundMode(exists=True, E_b=E_b, Z=Z, roots=((E_b, Z),))

    band_lo, band_hi = model.band
    if model.sites is not None:
        eps = model.mode_energies()
        band_lo, band_hi = float(eps.min()), float(eps.max())
    unit = model.omega_C
    roots = []
    # just outside the band edge the level-shift integral diverges, so h has
    # a definite sign there; start the brackets a relative hair away
    step_lo = max(abs(band_lo), unit) * 1e-13
    step_hi = max(abs(band_hi), unit) * 1e-13
    for search in (
        lambda: _solve_root(h, *_bracket_below(h, band_lo - step_lo, unit)),
        lambda: _solve_root(h, *_bracket_above(h, band_hi + step_hi, unit)),
    ):
        try:
            E_b = search()
        except BracketError:
            continue
        roots.append((float(E_b), _residue(model, E_b)))
    if not roots:
        return BoundMode(exists=False)
    roots.sort(key=lambda item: -item[1])
    E_b, Z = roots[0]
    return BoundMode(exists=True, E_b=E_b, Z=Z, roots=tuple(roots))


def superohmic_criterion(eta, omega_c, omega0):
    """Closed-form n = 3 existence test: a bound mode forms iff
    omega0 - 2*eta*omega_c^3/omega0^2 < 0.  Returns (exists, margin)."""
    if eta <= 0 or omega_c <= 0 or omega0 <= 0:
        raise ValueError("eta, omega_c and omega0 must be > 0")
    margin = omega0 - 2.0 * eta * omega_c**3 / omega0**2
    return margin < 0.0, margin


def steady_state_amplitude(model, mode):
    """Predicted |u(t -> inf)|^2: the squared residue of the primary bound
    mode, or 0 when no bound mode exists."""
    bm = find_bound_mode(model, mode)
    if not bm.exists:
        return 0.0
    return bm.Z**2
