"""Exact single-excitation simulator of one system cavity coupled to an array.

One excitation shared by the system site and N array sites is a dense
(N+1) x (N+1) real symmetric eigenproblem, so the survival amplitude
u(t) = <sys| exp(-i H t) |sys> comes out exact for all times.  This is the
independent oracle for the Volterra solver and for the bound-mode finder.
"""

from dataclasses import dataclass, field

import numpy as np

from .spectra import CavityArraySpectrum
from .volterra import AmplitudeTrajectory, SystemMode, TimeGrid


@dataclass(frozen=True, eq=False)
class SingleExcitationChain:
    H: np.ndarray = field(repr=False)
    topology: str
    bath: CavityArraySpectrum
    mode: SystemMode

    @property
    def dim(self):
        return self.H.shape[0]


def build_chain(bath, mode, topology="ring"):
    """Single-excitation Hamiltonian: system site 0, array sites 1..N.

    The system couples to array site 0 with strength g in both topologies;
    ``ring`` closes the array with an extra xi bond, matching the uniform
    g/sqrt(N) momentum-space coupling assumed by the finite-N memory kernel.
    """
    if topology not in ("ring", "open"):
        raise ValueError("topology must be 'ring' or 'open'")
    if bath.sites is None:
        raise ValueError("the lattice oracle needs a finite site count")
    N = bath.sites
    H = np.zeros((N + 1, N + 1))
    H[0, 0] = mode.omega0
    for j in range(1, N + 1):
        H[j, j] = bath.omega_C
    H[0, 1] = H[1, 0] = bath.g
    bonds = range(N) if topology == "ring" and N > 1 else range(N - 1)
    for j in bonds:
        a, b = 1 + j, 1 + (j + 1) % N
        H[a, b] += bath.xi
        H[b, a] += bath.xi
    return SingleExcitationChain(H=H, topology=topology, bath=bath, mode=mode)


def _spectral_data(chain):
    lam, V = np.linalg.eigh(chain.H)
    return lam, V[0, :] ** 2


def exact_amplitude(chain, grid):
    """u(t_j) = sum_m |<sys|m>|^2 exp(-i lambda_m t_j) from full diagonalization."""
    lam, weights = _spectral_data(chain)
    ts = grid.times()
    u = np.empty(ts.shape, dtype=complex)
    step = max(1, 2**22 // chain.dim)
    for lo in range(0, len(ts), step):
        blk = ts[lo : lo + step]
        u[lo : lo + step] = np.exp(-1j * np.outer(blk, lam)) @ weights
    return AmplitudeTrajectory(grid=grid, u=u, dt_used=grid.dt, error_estimate=0.0)


def discrete_bound_modes(chain, margin=1e-9):
    """Eigenpairs outside the array band [omega_C - 2xi, omega_C + 2xi].

    Returns (eigenvalue, weight) pairs with weight the squared eigenvector
    component on the system site; empty when no eigenvalue clears the band
    edges by more than ``margin``.
    """
    lam, weights = _spectral_data(chain)
    lo, hi = chain.bath.band
    outside = (lam < lo - margin) | (lam > hi + margin)
    return [(float(l), float(w)) for l, w in zip(lam[outside], weights[outside])]
