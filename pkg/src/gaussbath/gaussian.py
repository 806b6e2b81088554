"""Two-mode Gaussian state evolved under local decoherence, and its correlations.

Starting from the two-mode squeezed vacuum exp[r(a1 a2 - a1+ a2+)]|00>, local
zero-temperature decoherence with survival amplitude u(t) produces a Gaussian
state whose coherent-state kernel is fixed by three coefficients

    a = 1 / (cosh^2 r * q),    b = -tanh r * u^2 / q,
    c = tanh^2 r * (1 - |u|^2) * |u|^2 / q,    q = 1 - tanh^2 r (1 - |u|^2)^2.

The 4x4 covariance matrix (vacuum = identity, quadrature order x1 p1 x2 p2)
follows from these, and every correlation measure used here -- Gaussian
quantum discord, mutual information, classical correlation and logarithmic
negativity -- is a function of its symplectic invariants
I1 = det(alpha1), I2 = det(alpha2), I3 = det(gamma), I4 = det(sigma).
All entropic quantities are in nats.
"""

from dataclasses import dataclass, field

import numpy as np

VACUUM_EPS = 1e-12  # I2 - 1 below this means mode 2 is vacuum: product state
F_DOMAIN_TOL = 1e-6
AMPLITUDE_TOL = 1e-8
DISCORD_CLAMP = 1e-9


class PhysicalityError(ValueError):
    """A state or intermediate quantity violates the uncertainty principle."""


@dataclass(frozen=True)
class EvolvedStateCoefficients:
    a: float
    b: complex
    c: float


@dataclass(frozen=True, eq=False)
class CovarianceMatrix4:
    """Symmetrized covariance matrix sigma_ij = <dXi dXj + dXj dXi>."""

    sigma: np.ndarray = field(repr=False)

    @classmethod
    def from_matrix(cls, sigma):
        sigma = np.asarray(sigma, dtype=float)
        if sigma.shape != (4, 4):
            raise ValueError("covariance matrix must be 4x4")
        if not np.allclose(sigma, sigma.T, atol=1e-12):
            raise ValueError("covariance matrix must be symmetric")
        return cls(sigma=sigma)


@dataclass(frozen=True)
class SymplecticData:
    I1: float
    I2: float
    I3: float
    I4: float
    delta: float
    nu_minus: float
    nu_plus: float


@dataclass(frozen=True)
class CorrelationMeasures:
    discord: float
    mutual_info: float
    classical: float
    log_neg: float
    branch: str


def entropy_f(x):
    """f(x) = ((x+1)/2) ln((x+1)/2) - ((x-1)/2) ln((x-1)/2), with f(1) = 0.

    Thermal-state von Neumann entropy of a symplectic eigenvalue.  Values in
    [1 - 1e-6, 1] are treated as 1 (roundoff at purity); smaller values raise.
    """
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 1.0 - F_DOMAIN_TOL):
        bad = float(xs[xs < 1.0 - F_DOMAIN_TOL].min())
        raise PhysicalityError(f"entropy argument {bad} below 1")
    xs = np.maximum(xs, 1.0)
    xp = 0.5 * (xs + 1.0)
    xm = 0.5 * (xs - 1.0)
    out = xp * np.log(xp) - np.where(xm > 0, xm * np.log(np.where(xm > 0, xm, 1.0)), 0.0)
    return float(out) if np.isscalar(x) else out


def evolved_coefficients(u, r):
    """Kernel coefficients (a, b, c) of the evolved two-mode state."""
    if r < 0:
        raise ValueError("squeezing parameter r must be >= 0")
    mod = abs(u)
    if mod > 1.0 + AMPLITUDE_TOL:
        raise PhysicalityError(f"|u| = {mod} exceeds 1 beyond tolerance")
    U = mod * mod
    th = np.tanh(r)
    q = 1.0 - th * th * (1.0 - U) ** 2
    a = 1.0 / (np.cosh(r) ** 2 * q)
    b = -th * complex(u) ** 2 / q
    c = th * th * (1.0 - U) * U / q
    return EvolvedStateCoefficients(a=float(a), b=complex(b), c=float(c))


def covariance_from_amplitude(u, r):
    """Covariance matrix of the evolved state (overall vacuum-=-identity scale).

    Diagonal entries are y(1+d)/(1-d)^2 and the cross block is
    (2 a / x) [[Re b, Im b], [Im b, -Re b]] with x = [(1-c)^2 - |b|^2]^2,
    y = a/(1-c), d = c + |b|^2/(1-c).
    """
    co = evolved_coefficients(u, r)
    babs2 = abs(co.b) ** 2
    x = ((1.0 - co.c) ** 2 - babs2) ** 2
    y = co.a / (1.0 - co.c)
    d = co.c + babs2 / (1.0 - co.c)
    diag = y * (1.0 + d) / (1.0 - d) ** 2
    o_re = 2.0 * co.a * co.b.real / x
    o_im = 2.0 * co.a * co.b.imag / x
    sigma = np.array(
        [
            [diag, 0.0, o_re, o_im],
            [0.0, diag, o_im, -o_re],
            [o_re, o_im, diag, 0.0],
            [o_im, -o_re, 0.0, diag],
        ]
    )
    cov = CovarianceMatrix4(sigma=sigma)
    data = symplectic_invariants(cov)
    if data.nu_minus < 1.0 - F_DOMAIN_TOL:
        raise PhysicalityError(f"nu_minus = {data.nu_minus} below 1")
    return cov


def symplectic_invariants(cov):
    """Block determinants and symplectic eigenvalues of a two-mode state."""
    s = cov.sigma
    I1 = float(np.linalg.det(s[:2, :2]))
    I2 = float(np.linalg.det(s[2:, 2:]))
    I3 = float(np.linalg.det(s[:2, 2:]))
    I4 = float(np.linalg.det(s))
    delta = I1 + I2 + 2.0 * I3
    disc = delta * delta - 4.0 * I4
    if disc < -1e-9:
        raise PhysicalityError(f"delta^2 - 4 I4 = {disc} is negative")
    root = np.sqrt(max(disc, 0.0))
    nu_minus = np.sqrt(0.5 * (delta - root))
    nu_plus = np.sqrt(0.5 * (delta + root))
    return SymplecticData(
        I1=I1, I2=I2, I3=I3, I4=I4, delta=delta,
        nu_minus=float(nu_minus), nu_plus=float(nu_plus),
    )


def _conditional_m(I1, I2, I3, I4):
    """The measurement term m of the discord formula, with branch label.

    The top expression applies when (I4 - I1 I2)^2 <= I3^2 (I2+1)(I1+I4);
    otherwise the bottom one, whose undetermined symbol C^2 is read as I3^2
    (the reading consistent with the boundary).
    """
    if I2 - 1.0 < VACUUM_EPS:
        # mode-2 marginal is vacuum, hence the state is a product: m -> I1
        return I1, "top"
    if (I4 - I1 * I2) ** 2 <= I3**2 * (I2 + 1.0) * (I1 + I4):
        inner = max(I3**2 + (I2 - 1.0) * (I4 - I1), 0.0)
        m = (2.0 * I3**2 + (I2 - 1.0) * (I4 - I1) + 2.0 * abs(I3) * np.sqrt(inner)) / (
            I2 - 1.0
        ) ** 2
        return m, "top"
    inner = max(I3**4 + (I4 - I1 * I2) ** 2 - 2.0 * I3**2 * (I4 + I1 * I2), 0.0)
    m = (I1 * I2 - I3**2 + I4 - np.sqrt(inner)) / (2.0 * I2)
    return m, "bottom"


def gaussian_discord(cov):
    """Gaussian quantum discord D = f(sqrt(I2)) - f(nu-) - f(nu+) + f(sqrt(m)).

    Returns (discord, branch).  Tiny negative values within 1e-9 are clamped
    to zero; anything more negative raises.
    """
    inv = symplectic_invariants(cov)
    if inv.nu_minus < 1.0 - F_DOMAIN_TOL:
        raise PhysicalityError(f"nu_minus = {inv.nu_minus} below 1")
    if inv.I2 - 1.0 < VACUUM_EPS:
        return 0.0, "top"
    m, branch = _conditional_m(inv.I1, inv.I2, inv.I3, inv.I4)
    disc = (
        entropy_f(np.sqrt(inv.I2))
        - entropy_f(inv.nu_minus)
        - entropy_f(inv.nu_plus)
        + entropy_f(np.sqrt(max(m, 1.0)))
    )
    if disc < -DISCORD_CLAMP:
        raise PhysicalityError(f"discord {disc} more negative than roundoff allows")
    return max(disc, 0.0), branch


def mutual_and_classical(cov):
    """Total correlations I = f(sqrt(I1)) + f(sqrt(I2)) - f(nu-) - f(nu+) and
    the classical share C = I - D.  Returns (mutual_info, classical)."""
    inv = symplectic_invariants(cov)
    mutual = (
        entropy_f(np.sqrt(inv.I1))
        + entropy_f(np.sqrt(inv.I2))
        - entropy_f(inv.nu_minus)
        - entropy_f(inv.nu_plus)
    )
    disc, _ = gaussian_discord(cov)
    return mutual, mutual - disc


def log_negativity(cov):
    """Gaussian logarithmic negativity max(0, -ln nu~-) from the partial
    transpose, nu~-^2 = (delta~ - sqrt(delta~^2 - 4 I4))/2, delta~ = I1+I2-2I3."""
    inv = symplectic_invariants(cov)
    dtil = inv.I1 + inv.I2 - 2.0 * inv.I3
    disc = dtil * dtil - 4.0 * inv.I4
    if disc < -1e-9:
        raise PhysicalityError(f"delta~^2 - 4 I4 = {disc} is negative")
    nu_t = np.sqrt(0.5 * (dtil - np.sqrt(max(disc, 0.0))))
    if nu_t >= 1.0 - 1e-12:
        return 0.0  # separable (within roundoff)
    return float(-np.log(nu_t))


def correlation_measures(cov):
    """All correlation measures of one state in a single pass."""
    disc, branch = gaussian_discord(cov)
    mutual, classical = mutual_and_classical(cov)
    return CorrelationMeasures(
        discord=disc,
        mutual_info=mutual,
        classical=classical,
        log_neg=log_negativity(cov),
        branch=branch,
    )


def measures_from_amplitude(u, r):
    """Vectorized correlation measures along an amplitude trajectory.

    Uses the closed-form invariants of the evolved-state family
    (I1 = I2 = A^2, I3 = -4|w|^2, I4 = (A^2 - 4|w|^2)^2 with
    A = 1 + 2|u|^2 sinh^2 r and |w| = |u|^2 sinh r cosh r), which the
    per-sample covariance route reproduces entrywise.  Returns a dict of
    arrays keyed like the CSV columns.
    """
    u = np.asarray(u, dtype=complex)
    U = np.abs(u) ** 2
    sh, ch = np.sinh(r), np.cosh(r)
    A = 1.0 + 2.0 * U * sh * sh
    wabs = U * sh * ch
    I1 = A * A
    I3 = -4.0 * wabs * wabs
    I4 = (A * A - 4.0 * wabs * wabs) ** 2
    nu = np.sqrt(A * A - 4.0 * wabs * wabs)  # nu- = nu+ for this family
    nu_t = A - 2.0 * wabs
    log_neg = np.where(nu_t < 1.0 - 1e-12, -np.log(np.where(nu_t > 0, nu_t, 1.0)), 0.0)

    live = I1 - 1.0 >= VACUUM_EPS
    top = (I4 - I1 * I1) ** 2 <= I3**2 * (I1 + 1.0) * (I1 + I4)
    den = np.where(live, (I1 - 1.0) ** 2, 1.0)
    inner_top = np.maximum(I3**2 + (I1 - 1.0) * (I4 - I1), 0.0)
    m_top = (2.0 * I3**2 + (I1 - 1.0) * (I4 - I1) + 2.0 * np.abs(I3) * np.sqrt(inner_top)) / den
    inner_bot = np.maximum(I3**4 + (I4 - I1 * I1) ** 2 - 2.0 * I3**2 * (I4 + I1 * I1), 0.0)
    m_bot = (I1 * I1 - I3**2 + I4 - np.sqrt(inner_bot)) / (2.0 * I1)
    m = np.where(top, m_top, m_bot)

    fA = entropy_f(A)
    fnu = entropy_f(nu)
    fm = entropy_f(np.sqrt(np.maximum(m, 1.0)))
    discord = np.where(live, np.maximum(fA - 2.0 * fnu + fm, 0.0), 0.0)
    mutual = np.where(live, np.maximum(2.0 * fA - 2.0 * fnu, 0.0), 0.0)
    return {
        "I1": I1,
        "I2": I1.copy(),
        "I3": I3,
        "I4": I4,
        "nu_minus": nu,
        "nu_plus": nu.copy(),
        "discord": discord,
        "mutual_info": mutual,
        "classical": mutual - discord,
        "log_neg": log_neg,
        "branch": np.where(top | ~live, "top", "bottom"),
    }
