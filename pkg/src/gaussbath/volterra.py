"""Exact decoherence amplitude u(t) and time-local decay coefficients.

Solves u'(t) + i*omega0*u(t) + int_0^t f(t-s) u(s) ds = 0, u(0) = 1, where f
is the reservoir memory kernel.  The integration happens in the frame
rotating at omega0 (v = exp(i*omega0*t) * u obeys the same equation with the
dressed kernel f(x)*exp(i*omega0*x) and no oscillatory drift term), which
removes the bare phase from the discretization error; the scheme itself is a
second-order Heun predictor-corrector with trapezoidal memory quadrature.

The time-local decay rate Gamma(t) and frequency shift Omega(t) follow from
Gamma + i*Omega = -u'(t)/u(t), estimated by finite differences.
"""

import os
from dataclasses import dataclass, field

import numpy as np

from .spectra import evaluate_density, memory_kernel

if os.environ.get("GAUSSBATH_PURE"):
    from . import _volterra_py as _backend
else:
    try:
        from . import _volterra_cy as _backend
    except ImportError:
        from . import _volterra_py as _backend

BACKEND = "compiled" if _backend.__name__.endswith("_volterra_cy") else "python"

VALIDITY_FLOOR = 1e-8  # |u|^2 below this makes -u'/u numerically meaningless


class ConvergenceError(RuntimeError):
    """Step-halving refinement failed to reach the requested tolerance."""

    def __init__(self, message, error_estimate):
        super().__init__(message)
        self.error_estimate = error_estimate


@dataclass(frozen=True)
class SystemMode:
    """Bare frequency of each (identical) local oscillator."""

    omega0: float

    def __post_init__(self):
        if self.omega0 <= 0:
            raise ValueError("omega0 must be > 0")


@dataclass(frozen=True)
class TimeGrid:
    t_max: float
    steps: int

    def __post_init__(self):
        if self.t_max <= 0:
            raise ValueError("t_max must be > 0")
        if self.steps < 2:
            raise ValueError("steps must be >= 2")

    @property
    def dt(self):
        return self.t_max / self.steps

    def times(self):
        return self.dt * np.arange(self.steps + 1)


@dataclass(frozen=True, eq=False)
class AmplitudeTrajectory:
    grid: TimeGrid
    u: np.ndarray = field(repr=False)
    dt_used: float
    error_estimate: float

    @property
    def times(self):
        return self.grid.times()


@dataclass(frozen=True, eq=False)
class DecayRateSeries:
    times: np.ndarray = field(repr=False)
    gamma: np.ndarray = field(repr=False)
    omega_shift: np.ndarray = field(repr=False)
    valid: np.ndarray = field(repr=False)


def _integrate(model, mode, t_max, steps):
    """Single fixed-step solve; returns u on the grid of ``steps`` intervals."""
    h = t_max / steps
    ts = h * np.arange(steps + 1)
    dressed = memory_kernel(model, ts) * np.exp(1j * mode.omega0 * ts)
    v = _backend.heun_volterra(np.ascontiguousarray(dressed), h)
    return v * np.exp(-1j * mode.omega0 * ts)


def solve_amplitude(model, mode, grid, tol=1e-5, max_refinements=8):
    """Solve the amplitude equation on ``grid`` with step-halving refinement.

    The solver re-runs with halved dt until the sup-norm change of u on the
    requested grid drops below ``tol``; the finest solution is reported,
    restricted to the requested grid.
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    coarse = _integrate(model, mode, grid.t_max, grid.steps)
    err = np.inf
    for k in range(1, max_refinements + 1):
        fine = _integrate(model, mode, grid.t_max, grid.steps << k)
        restricted = fine[:: 1 << k]
        err = float(np.abs(restricted - coarse).max())
        coarse = restricted
        if err < tol:
            return AmplitudeTrajectory(
                grid=grid,
                u=restricted,
                dt_used=grid.t_max / (grid.steps << k),
                error_estimate=err,
            )
    raise ConvergenceError(
        f"no convergence to tol={tol} after {max_refinements} halvings "
        f"(last change {err:.3e})",
        error_estimate=err,
    )


def decay_rates(traj):
    """Gamma(t) and Omega(t) from Gamma + i*Omega = -u'(t)/u(t).

    u' is estimated by centered differences (second-order one-sided stencils
    at the endpoints).  Samples with |u|^2 below the validity floor are
    flagged invalid rather than dropped.
    """
    u = traj.u
    h = traj.grid.dt
    du = np.empty_like(u)
    du[1:-1] = (u[2:] - u[:-2]) / (2 * h)
    du[0] = (-3 * u[0] + 4 * u[1] - u[2]) / (2 * h)
    du[-1] = (3 * u[-1] - 4 * u[-2] + u[-3]) / (2 * h)
    valid = np.abs(u) ** 2 >= VALIDITY_FLOOR
    z = np.full(u.shape, np.nan + 0j)
    z[valid] = -du[valid] / u[valid]
    return DecayRateSeries(
        times=traj.times,
        gamma=z.real.copy(),
        omega_shift=z.imag.copy(),
        valid=valid,
    )


def markovian_reference(model, mode, grid):
    """Golden-rule reference u_M(t) = exp(-(i*omega0 + pi*J(omega0)) t).

    No Lamb shift is included.  If omega0 falls outside the spectral support
    the Markovian rate is zero and u_M is the free evolution.
    """
    gamma_m = np.pi * evaluate_density(model, mode.omega0)
    ts = grid.times()
    u = np.exp(-(1j * mode.omega0 + gamma_m) * ts)
    return AmplitudeTrajectory(grid=grid, u=u, dt_used=grid.dt, error_estimate=0.0)
