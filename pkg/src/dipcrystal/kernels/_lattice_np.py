"""Pure-numpy reference implementation of the lattice-sum kernels.

Same call signatures as the compiled extension `_lattice_c`; used as the
import-time fallback and as the comparison baseline in the benchmarks.
Broadcasting over q is chunked to keep the temporaries cache-friendly.
"""

import numpy as np

_CHUNK = 256


def cos_sum(qpts, sites, power):
    """sum_j cos(q . r_j) / |r_j|^power for every row q of qpts (n,2)."""
    qpts = np.ascontiguousarray(qpts, dtype=float)
    sites = np.ascontiguousarray(sites, dtype=float)
    inv_rp = np.abs(np.hypot(sites[:, 0], sites[:, 1])) ** (-float(power))
    out = np.empty(qpts.shape[0])
    for a in range(0, qpts.shape[0], _CHUNK):
        phase = qpts[a:a + _CHUNK] @ sites.T
        out[a:a + _CHUNK] = np.cos(phase) @ inv_rp
    return out


def dyn_mat(qpts, sites):
    """Packed [F_xx, F_yy, F_xy] of F(q) = 3 sum_j [5 n n^T - 1](1-cos(q.r))/r^5.

    F(q)'s eigenvalues are the squared dimensionless phonon frequencies
    f_lambda(q)^2 of the planar crystal.
    """
    qpts = np.ascontiguousarray(qpts, dtype=float)
    sites = np.ascontiguousarray(sites, dtype=float)
    r2 = sites[:, 0] ** 2 + sites[:, 1] ** 2
    inv_r5 = r2 ** (-2.5)
    nx2 = sites[:, 0] ** 2 / r2
    ny2 = sites[:, 1] ** 2 / r2
    nxy = sites[:, 0] * sites[:, 1] / r2
    wxx = 3.0 * (5.0 * nx2 - 1.0) * inv_r5
    wyy = 3.0 * (5.0 * ny2 - 1.0) * inv_r5
    wxy = 15.0 * nxy * inv_r5
    out = np.empty((qpts.shape[0], 3))
    for a in range(0, qpts.shape[0], _CHUNK):
        one_minus_cos = 1.0 - np.cos(qpts[a:a + _CHUNK] @ sites.T)
        out[a:a + _CHUNK, 0] = one_minus_cos @ wxx
        out[a:a + _CHUNK, 1] = one_minus_cos @ wyy
        out[a:a + _CHUNK, 2] = one_minus_cos @ wxy
    return out


def sin_vec(qpts, sites):
    """sum_j (r_j / |r_j|^5) sin(q . r_j); shape (n, 2).

    Contracting with a polarization vector and multiplying by 3/sqrt(2)
    yields the phonon-coupling function g_lambda(q).
    """
    qpts = np.ascontiguousarray(qpts, dtype=float)
    sites = np.ascontiguousarray(sites, dtype=float)
    r2 = sites[:, 0] ** 2 + sites[:, 1] ** 2
    inv_r5 = r2 ** (-2.5)
    wx = sites[:, 0] * inv_r5
    wy = sites[:, 1] * inv_r5
    out = np.empty((qpts.shape[0], 2))
    for a in range(0, qpts.shape[0], _CHUNK):
        s = np.sin(qpts[a:a + _CHUNK] @ sites.T)
        out[a:a + _CHUNK, 0] = s @ wx
        out[a:a + _CHUNK, 1] = s @ wy
    return out
