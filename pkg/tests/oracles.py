"""Independent oracles used by the test suite.

Everything here recomputes expected values through a different route than
the library: scalar eigenvalue-weight sums evaluated in mpmath for the
exponent function and its finite differences, and brute-force grid scans
for the one-dimensional maximizations.
"""

import mpmath as mp
import numpy as np


def weight_form(pair):
    """Overlap weights and spectra: psi(s) = -log sum_ij W_ij p_i^{1-s} q_j^s."""
    p, U = pair.rho_eig
    q, V = pair.sigma_eig
    W = np.abs(U.conj().T @ V) ** 2
    return W, p, q


def psi_scalar_mp(pair, s, dps=40):
    """The plain exponent from the scalar weight form at high precision."""
    W, p, q = weight_form(pair)
    with mp.workdps(dps):
        tot = mp.mpf(0)
        for i in range(pair.dim):
            for j in range(pair.dim):
                tot += (
                    mp.mpf(float(W[i, j]))
                    * mp.mpf(float(p[i])) ** (1 - s)
                    * mp.mpf(float(q[j])) ** s
                )
        return -mp.log(tot)


def psi_fd_mp(pair, s, h=1e-5, dps=40):
    """Central finite differences of the exponent, free of float64 roundoff."""
    with mp.workdps(dps):
        sh, hh = mp.mpf(s), mp.mpf(h)
        up = psi_scalar_mp(pair, sh + hh, dps)
        mid = psi_scalar_mp(pair, sh, dps)
        down = psi_scalar_mp(pair, sh - hh, dps)
        d1 = (up - down) / (2 * hh)
        d2 = (up - 2 * mid + down) / hh**2
        return float(d1), float(d2)


def classical_exponent(p, q, s):
    return -np.log((p[:, None] ** (1.0 - s) * q[:, None] ** s).sum(axis=0))


def grid_max_phi(p, q, a, points=1_000_001):
    """Brute-force maximum of the classical exponent minus a*s on [0, 1]."""
    s = np.linspace(0.0, 1.0, points)
    return float((classical_exponent(np.asarray(p), np.asarray(q), s) - a * s).max())


def grid_max_hoeffding(p, q, r, points=1_000_000):
    """Brute-force maximum of (E(s) - (1-s) r)/s on (0, 1]."""
    s = np.linspace(1e-6, 1.0, points)
    vals = (classical_exponent(np.asarray(p), np.asarray(q), s) - (1.0 - s) * r) / s
    return float(vals.max())
