"""Independent reference computations shared by the tests.

Nothing here uses the package's elliptic kernel, ODE shooting or tables:
potentials are sampled with scipy.special.ellipj and spectra come from a
plane-wave Hamiltonian diagonalised with numpy.
"""

import numpy as np
from scipy import special


def lame_potential(p, q, m, offset=0.0):
    def V(x):
        sn, cn, dn, _ = special.ellipj(np.asarray(x, dtype=float), m)
        return p * m * sn**2 + q * m * cn**2 / dn**2 + offset
    return V


def plane_wave_edges(V, L, n_basis=48, n_samples=512):
    """Periodic and antiperiodic eigenvalues of -d^2/dx^2 + V on [0, L).

    Returns (periodic, antiperiodic), each sorted; spectrally accurate for
    smooth V.
    """
    x = np.arange(n_samples) * (L / n_samples)
    vhat = np.fft.fft(V(x)) / n_samples
    out = []
    for shift in (0.0, 0.5):
        j = np.arange(-n_basis, n_basis + 1) + shift
        k = 2 * np.pi * j / L
        d = np.subtract.outer(np.arange(len(j)), np.arange(len(j)))
        H = vhat[d % n_samples]
        H = H + np.diag(k * k)
        out.append(np.linalg.eigvalsh(H))
    return out


def band_edges(V, L, count, **kw):
    per, anti = plane_wave_edges(V, L, **kw)
    return np.sort(np.concatenate([per, anti]))[:count]


def sign_changes(y):
    """Sign changes between consecutive samples (no wrap-around)."""
    s = np.sign(y)
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))
