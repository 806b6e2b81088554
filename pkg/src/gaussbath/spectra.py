"""Reservoir spectral densities, their memory kernels and level-shift integrals.

Two reservoir families are supported:

* ``OhmicFamilySpectrum`` -- J(w) = eta * w * (w/omega_ref)**(n-1) * exp(-w/omega_c)
  on w >= 0, covering sub-Ohmic (n < 1), Ohmic (n = 1) and super-Ohmic (n > 1)
  couplings.
* ``CavityArraySpectrum`` -- a tight-binding band of cavities with dispersion
  eps_k = omega_C + 2*xi*cos(k), giving support [omega_C - 2*xi, omega_C + 2*xi].
  Either a finite ring of N sites or the N -> infinity continuum.

The memory kernel is f(t) = int J(w) exp(-i w t) dw and the level-shift
integrals int J(w)/(w - E)**order dw feed the bound-mode analysis.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import j0

from ._quad import adaptive_gauss, semi_infinite


class SupportError(ValueError):
    """Raised when an energy argument falls inside the spectral support."""


@dataclass(frozen=True)
class OhmicFamilySpectrum:
    """Ohmic-family reservoir. Frequencies are in units of the system frequency."""

    eta: float
    n: float
    omega_c: float
    omega_ref: float

    def __post_init__(self):
        # eta = 0 (decoupled limit) is admitted: the dynamics and CLI
        # contracts exercise free evolution through it
        if self.eta < 0:
            raise ValueError("eta must be >= 0")
        if self.n <= 0:
            raise ValueError("n must be > 0")
        if self.omega_c <= 0:
            raise ValueError("omega_c must be > 0")
        if self.omega_ref <= 0:
            raise ValueError("omega_ref must be > 0")


@dataclass(frozen=True)
class CavityArraySpectrum:
    """Coupled-cavity-array reservoir; ``sites=None`` selects the continuum."""

    g: float
    xi: float
    omega_C: float
    sites: int | None = None

    def __post_init__(self):
        if self.g < 0:
            raise ValueError("g must be >= 0")
        if self.xi <= 0:
            raise ValueError("xi must be > 0")
        if self.omega_C <= 2 * self.xi:
            raise ValueError("omega_C must exceed 2*xi (band bottom must stay positive)")
        if self.sites is not None and self.sites < 1:
            raise ValueError("sites must be a positive count or None for the continuum")

    @property
    def band(self):
        return self.omega_C - 2 * self.xi, self.omega_C + 2 * self.xi

    def mode_energies(self):
        """Ring momenta k_m = 2*pi*m/N give eps_m = omega_C + 2*xi*cos(k_m)."""
        if self.sites is None:
            raise ValueError("mode_energies requires a finite site count")
        k = 2 * np.pi * np.arange(self.sites) / self.sites
        return self.omega_C + 2 * self.xi * np.cos(k)


SpectralModel = OhmicFamilySpectrum | CavityArraySpectrum


def evaluate_density(model, omega):
    """Spectral density J(omega); zero outside the support."""
    if isinstance(model, OhmicFamilySpectrum):
        w = np.asarray(omega, dtype=float)
        if np.any(w < 0):
            raise ValueError("Ohmic-family density is defined for omega >= 0")
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(w > 0, w / model.omega_ref, 1.0)
            dens = model.eta * w * ratio ** (model.n - 1) * np.exp(-w / model.omega_c)
        dens = np.where(w > 0, dens, 0.0)
        return float(dens) if np.isscalar(omega) else dens
    w = np.asarray(omega, dtype=float)
    # finite N returns the continuum value; the discrete sum enters only
    # through the memory kernel and the level-shift sums
    disc = 4 * model.xi**2 - (w - model.omega_C) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        dens = np.where(disc > 0, model.g**2 / (np.pi * np.sqrt(np.abs(disc))), 0.0)
    return float(dens) if np.isscalar(omega) else dens


def memory_kernel(model, t):
    """Memory kernel f(t) = int J(w) exp(-i w t) dw, in closed form.

    Ohmic family: f(t) = eta * Gamma(n+1) * omega_c^2 * (omega_c/omega_ref)^(n-1)
    / (1 + i omega_c t)^(n+1).  Finite array: exact N-term mode sum.  Continuum
    array: g^2 * exp(-i omega_C t) * J0(2 xi t).
    """
    ts = np.asarray(t, dtype=float)
    if np.any(ts < 0):
        raise ValueError("memory kernel is defined for t >= 0")
    if isinstance(model, OhmicFamilySpectrum):
        amp = (
            model.eta
            * math.gamma(model.n + 1)
            * model.omega_c**2
            * (model.omega_c / model.omega_ref) ** (model.n - 1)
        )
        out = amp / (1 + 1j * model.omega_c * ts) ** (model.n + 1)
    elif model.sites is None:
        out = model.g**2 * np.exp(-1j * model.omega_C * ts) * j0(2 * model.xi * ts)
        out = np.asarray(out, dtype=complex)
    else:
        eps = model.mode_energies()
        flat = np.atleast_1d(ts)
        out = np.empty(flat.shape, dtype=complex)
        # chunked so large time grids do not allocate an (M x N) matrix at once
        step = max(1, 2**22 // max(len(eps), 1))
        for lo in range(0, len(flat), step):
            blk = flat[lo : lo + step]
            out[lo : lo + step] = np.exp(-1j * np.outer(blk, eps)).sum(axis=1)
        out *= model.g**2 / model.sites
        out = out.reshape(ts.shape)
    return complex(out) if np.isscalar(t) else out


def memory_kernel_quadrature(model, t, abs_tol=1e-13):
    """Numerical-quadrature fallback for the memory kernel (continuum variants).

    Exists as an independent cross-check of the closed forms; the finite-N
    kernel is already an exact sum and has the lattice simulator as its oracle.
    """
    if isinstance(model, OhmicFamilySpectrum):
        scale = model.omega_c

        def integrand(w):
            return evaluate_density(model, w) * np.exp(-1j * w * t)

        return semi_infinite(integrand, scale, abs_tol=abs_tol)
    if model.sites is not None:
        raise ValueError("quadrature fallback applies to the continuum variants only")

    # substitute w = omega_C + 2 xi cos(theta); the inverse-sqrt band-edge
    # singularities integrate out exactly
    def integrand(theta):
        w = model.omega_C + 2 * model.xi * np.cos(theta)
        return (model.g**2 / np.pi) * np.exp(-1j * w * t)

    return adaptive_gauss(integrand, 0.0, np.pi, abs_tol=abs_tol)


def _check_outside_support(model, E):
    if isinstance(model, OhmicFamilySpectrum):
        # E = 0 is admitted: J vanishes at the origin fast enough for the
        # level-shift integrand to stay integrable, and the bound-mode
        # criterion is evaluated exactly there
        if E > 0:
            raise SupportError(f"E={E} lies inside the Ohmic-family support [0, inf)")
        return
    if model.sites is None:
        lo, hi = model.band
    else:
        eps = model.mode_energies()
        lo, hi = eps.min(), eps.max()
    if lo <= E <= hi:
        raise SupportError(f"E={E} lies inside the spectral support [{lo}, {hi}]")


def level_shift_integral(model, E, order=1, abs_tol=1e-12):
    """int J(w)/(w - E)**order dw for E strictly outside the support.

    order=1 is the reservoir-induced level shift entering the bound-mode
    equation; order=2 yields the bound-mode residue denominator.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    _check_outside_support(model, E)
    if isinstance(model, OhmicFamilySpectrum):
        def integrand(w):
            return evaluate_density(model, w) / (w - E) ** order

        return semi_infinite(integrand, model.omega_c, abs_tol=abs_tol)
    if model.sites is not None:
        eps = model.mode_energies()
        return float(model.g**2 / model.sites * np.sum((eps - E) ** (-float(order))))
    a = model.omega_C - E
    root = math.sqrt(a * a - 4 * model.xi**2)
    if order == 1:
        return math.copysign(model.g**2 / root, a)
    return model.g**2 * abs(a) / root**3
