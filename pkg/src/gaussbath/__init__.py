"""Non-Markovian decoherence of two-mode Gaussian states in structured baths.

The package solves the exact memory-kernel equation for the survival
amplitude u(t) of a cavity mode coupled to an Ohmic-family or coupled-cavity
reservoir, locates the bound (localized) modes responsible for frozen steady
states, and tracks Gaussian quantum discord and related correlation measures
of an initially two-mode squeezed state.

The O(M^2) Volterra inner loop runs in a compiled extension when available
(``backend_name()`` reports which); set ``GAUSSBATH_PURE=1`` to force the
pure-numpy fallback.
"""

from .boundmode import (
    BoundMode,
    BracketError,
    find_bound_mode,
    spectral_function_y,
    steady_state_amplitude,
    superohmic_criterion,
)
from .gaussian import (
    CorrelationMeasures,
    CovarianceMatrix4,
    EvolvedStateCoefficients,
    PhysicalityError,
    SymplecticData,
    correlation_measures,
    covariance_from_amplitude,
    entropy_f,
    evolved_coefficients,
    gaussian_discord,
    log_negativity,
    measures_from_amplitude,
    mutual_and_classical,
    symplectic_invariants,
)
from .lattice import SingleExcitationChain, build_chain, discrete_bound_modes, exact_amplitude
from .scenario import ConfigError, ScenarioConfig, parse_config, serialize_config
from .spectra import (
    CavityArraySpectrum,
    OhmicFamilySpectrum,
    SpectralModel,
    SupportError,
    evaluate_density,
    level_shift_integral,
    memory_kernel,
    memory_kernel_quadrature,
)
from .volterra import (
    BACKEND,
    AmplitudeTrajectory,
    ConvergenceError,
    DecayRateSeries,
    SystemMode,
    TimeGrid,
    decay_rates,
    markovian_reference,
    solve_amplitude,
)

__version__ = "0.1.0"


def backend_name():
    """Which Volterra inner-loop implementation was selected at import."""
    return BACKEND
