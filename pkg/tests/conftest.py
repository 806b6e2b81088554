"""Shared independent oracles for the test suite.

These deliberately avoid the package's own formula paths: the covariance
oracle builds second moments directly from operator averages, and the
discord oracle minimizes the conditional entropy over an explicit scan of
Gaussian measurements.
"""

import numpy as np


def moment_covariance(u, r):
    """Covariance matrix from the operator averages of the damped state.

    Each mode keeps <a+a> = |u|^2 sinh^2 r and the only cross moment is
    <a1 a2> = u^2 * (-sinh r cosh r); everything else vanishes at zero
    temperature.  Convention: sigma_ij = <dXi dXj + dXj dXi>, vacuum = 1.
    """
    diag = 1.0 + 2.0 * abs(u) ** 2 * np.sinh(r) ** 2
    w = -(complex(u) ** 2) * np.sinh(r) * np.cosh(r)
    block = 2.0 * np.array([[w.real, w.imag], [w.imag, -w.real]])
    sigma = np.zeros((4, 4))
    sigma[0, 0] = sigma[1, 1] = sigma[2, 2] = sigma[3, 3] = diag
    sigma[:2, 2:] = block
    sigma[2:, :2] = block.T
    return sigma


def entropy_of(nu):
    nu = np.asarray(nu, dtype=float)
    out = np.zeros_like(nu)
    ok = nu > 1 + 1e-14
    xp = (nu[ok] + 1) / 2
    xm = (nu[ok] - 1) / 2
    out[ok] = xp * np.log(xp) - xm * np.log(xm)
    return float(out) if out.ndim == 0 else out


def symplectic_eigs(sigma):
    """|eig(i Omega sigma)| pairs; generic route, no block formulas."""
    omega = np.array([
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ])
    ev = np.abs(np.linalg.eigvals(1j * omega @ sigma))
    return np.sort(ev)[[0, 2]]  # each value appears twice


def brute_force_discord(sigma, n_lam=800, n_theta=24):
    """Gaussian discord by direct minimization over measurement seeds.

    Measurement on mode 2 with pure seed R(theta) diag(lam, 1/lam) R(theta)^T;
    the scan yields an upper bound on the conditional entropy infimum, i.e. a
    value >= the closed-form discord, tight to the scan resolution.
    """
    alpha1 = sigma[:2, :2]
    alpha2 = sigma[2:, 2:]
    gamma = sigma[:2, 2:]
    nus = symplectic_eigs(sigma)
    S_rho = entropy_of(nus[0]) + entropy_of(nus[1])
    S1 = entropy_of(np.sqrt(np.linalg.det(alpha1)))
    S2 = entropy_of(np.sqrt(np.linalg.det(alpha2)))
    mutual = S1 + S2 - S_rho
    best = np.inf
    for theta in np.linspace(0.0, np.pi / 2, n_theta):
        c, s = np.cos(theta), np.sin(theta)
        R = np.array([[c, -s], [s, c]])
        for lam in np.exp(np.linspace(np.log(1e-4), np.log(1e4), n_lam)):
            seed = R @ np.diag([lam, 1.0 / lam]) @ R.T
            cond = alpha1 - gamma @ np.linalg.inv(alpha2 + seed) @ gamma.T
            det = np.linalg.det(cond)
            if det < 1.0:
                det = 1.0
            val = entropy_of(np.sqrt(det))
            if val < best:
                best = val
    classical = S1 - best
    return mutual - classical, mutual
