"""Exciton bands, phonon spectra and exciton-phonon couplings of the
infinite homogeneous crystal (1D chain and 2D triangular lattice).

Dimensionless conventions: lengths in a0, energies in U_dd, phonon
frequencies reported through f_lambda(q) with hbar*omega = U_dd f/sqrt(gamma).
1D quantities use closed polylogarithm forms; 2D quantities use real-space
lattice sums with radial cutoff and Richardson extrapolation in 1/R.
"""

import dataclasses
import functools
import math
import warnings

import numpy as np

from . import kernels
from .errors import ConfigError, NumericalInstabilityError
from .specfun import ZETA_3, ZETA_5, _polylog_circle_any, polylog_im, polylog_re

J0_1D = 2.0 * ZETA_3
F_MAX_1D = math.sqrt(93.0 * ZETA_5 / 2.0)
BANDWIDTH_1D = 3.5 * ZETA_3  # (J(0) - J(pi)) / |kappa|

# 2D triangular lattice: primitive vectors a1=(1,0), a2=(1/2,sqrt(3)/2);
# site density 2/sqrt(3); reciprocal primitive vectors below.
SITE_DENSITY_2D = 2.0 / math.sqrt(3.0)
B1_2D = 2.0 * math.pi * np.array([1.0, -1.0 / math.sqrt(3.0)])
B2_2D = 2.0 * math.pi * np.array([0.0, 2.0 / math.sqrt(3.0)])

DEFAULT_CUTOFF = 60.0
_CHAIN_CUTOFF = 2000.0  # 1/r^5-convergent cross-check sums on the embedded chain


@dataclasses.dataclass(frozen=True)
class BandSample:
    k: object
    J: float
    E: float  # exciton energy eps*J(0) + kappa*J(k) [U_dd], offset omitted


@dataclasses.dataclass(frozen=True)
class PhononMode:
    q: object
    branch: int
    f: float
    polarization: object = None


@dataclasses.dataclass(frozen=True)
class TransverseMode:
    q: float
    omega_y: complex  # [U_dd/hbar]; imaginary value flags an instability
    omega_z: complex
    stable: bool


@dataclasses.dataclass(frozen=True)
class CouplingElement:
    q: object
    k: object
    branch: int
    g_q: float
    M: complex  # [U_dd]; carries the 1/sqrt(N) normalization explicitly


@functools.lru_cache(maxsize=8)
def _tri_sites(cutoff):
    return kernels.triangular_sites(cutoff)


@functools.lru_cache(maxsize=4)
def _chain(cutoff):
    return kernels.chain_sites(cutoff)


def fold_1d(k):
    k = np.asarray(k, dtype=float)
    folded = k - 2.0 * np.pi * np.round(k / (2.0 * np.pi))
    if np.any(np.abs(k) > np.pi + 1e-12):
        warnings.warn("wavevector outside the first Brillouin zone; folded back")
    return folded


def fold_2d(q):
    """Fold 2-vectors into the first (hexagonal) Brillouin zone."""
    q = np.atleast_2d(np.asarray(q, dtype=float))
    shifts = np.array([i * B1_2D + j * B2_2D
                       for i in (-1, 0, 1) for j in (-1, 0, 1)])
    cand = q[:, None, :] - shifts[None, :, :]
    best = np.argmin(np.einsum("ijk,ijk->ij", cand, cand), axis=1)
    out = cand[np.arange(len(q)), best]
    if np.max(np.abs(out - q)) > 1e-12:
        warnings.warn("wavevector outside the first Brillouin zone; folded back")
    return out


# ---------------------------------------------------------------------------
# 1D closed forms (vectorized over q)

def j_1d(q):
    """J(q) = 2 sum_j cos(qj)/j^3 = 2 Re Li3(e^{iq})."""
    return 2.0 * polylog_re(3, q)


def j_prime_1d(q):
    return -2.0 * np.imag(_polylog_circle_any(2, q))


def f_1d(q):
    """Longitudinal phonon f(q); hbar*omega = U_dd f/sqrt(gamma)."""
    val = 12.0 * (2.0 * ZETA_5 - 2.0 * polylog_re(5, q))
    return np.sqrt(np.clip(val, 0.0, None))


def g_1d(q):
    """Coupling function g(q) = (6/sqrt(2)) sum_j sin(qj)/j^4."""
    return (6.0 / math.sqrt(2.0)) * polylog_im(4, q)


def f_prime_1d(q):
    # (f^2)' = 24 Im Li4, so f' = 12 Im Li4 / f; the f -> 0 limit is the
    # sound velocity sqrt(12 zeta(3))
    f = f_1d(q)
    return np.where(f > 1e-12, 12.0 * polylog_im(4, q) / np.where(f > 1e-12, f, 1.0),
                    math.sqrt(12.0 * ZETA_3))


# ---------------------------------------------------------------------------
# 2D lattice sums

def _j_2d(qpts, cutoff):
    """Richardson-extrapolated lattice sum sum_j cos(q.r_j)/r_j^3."""
    full = kernels.cos_sum(qpts, _tri_sites(cutoff), 3.0)
    half = kernels.cos_sum(qpts, _tri_sites(cutoff / 2.0), 3.0)
    return 2.0 * full - half


def _dyn_2d(qpts, cutoff):
    packed = kernels.dyn_mat(qpts, _tri_sites(cutoff))
    mats = np.empty((len(packed), 2, 2))
    mats[:, 0, 0] = packed[:, 0]
    mats[:, 1, 1] = packed[:, 1]
    mats[:, 0, 1] = mats[:, 1, 0] = packed[:, 2]
    return mats


def _phonon_2d(qpts, cutoff):
    """f^2 eigenvalues (ascending) and polarization vectors for 2D q points."""
    w, v = np.linalg.eigh(_dyn_2d(qpts, cutoff))
    floor = -1e-10 * max(1.0, float(np.max(np.abs(w))))
    if np.min(w) < floor:
        raise NumericalInstabilityError(
            f"negative squared phonon frequency {np.min(w):.3e} in 2D lattice sum")
    return np.clip(w, 0.0, None), v


def j_value(dim, k, cutoff=DEFAULT_CUTOFF):
    """Dimensionless exciton band function J(k)."""
    if dim == 1:
        return j_1d(fold_1d(k))
    if dim == 2:
        q = fold_2d(k)
        out = _j_2d(q, cutoff)
        return out[0] if np.ndim(k) == 1 else out
    raise ConfigError("dim must be 1 or 2")


def exciton_band(dim, k, kappa, epsilon, cutoff=DEFAULT_CUTOFF):
    """Exciton energy sample; E excludes the constant hbar*omega_eg offset."""
    jk = j_value(dim, k, cutoff)
    j0 = J0_1D if dim == 1 else float(_j_2d(np.zeros((1, 2)), cutoff)[0])
    jk_s = float(np.atleast_1d(jk)[0]) if np.ndim(jk) == 0 or np.ndim(k) <= 1 else jk
    return BandSample(k=k, J=jk_s, E=epsilon * j0 + kappa * jk_s)


def phonon_spectrum_hom(dim, q, cutoff=DEFAULT_CUTOFF):
    """Acoustic phonon mode(s) at one wavevector; f is dimensionless."""
    if dim == 1:
        return [PhononMode(q=float(q), branch=1, f=float(f_1d(fold_1d(q))))]
    if dim == 2:
        qf = fold_2d(q)
        f2, vecs = _phonon_2d(qf, cutoff)
        return [PhononMode(q=qf[0], branch=lam + 1,
                           f=float(np.sqrt(f2[0, lam])),
                           polarization=vecs[0, :, lam].copy())
                for lam in range(2)]
    raise ConfigError("dim must be 1 or 2")


def phonon_grid_2d(qpts, cutoff=DEFAULT_CUTOFF):
    """Vectorized 2D spectrum: (f (n,2) ascending, polarizations (n,2,2))."""
    f2, vecs = _phonon_2d(np.asarray(qpts, dtype=float), cutoff)
    return np.sqrt(f2), vecs


def g_2d(qpts, cutoff=DEFAULT_CUTOFF):
    """g_lambda(q) for both branches on a 2D grid; shape (n, 2)."""
    qpts = np.asarray(qpts, dtype=float)
    vec = kernels.sin_vec(qpts, _tri_sites(cutoff))
    _, pol = _phonon_2d(qpts, cutoff)
    proj = np.einsum("ni,nil->nl", vec, pol)
    return (3.0 / math.sqrt(2.0)) * proj


def debye_frequency(dim, cutoff=DEFAULT_CUTOFF, grid=64):
    """max_q f_lambda(q): 6.944 in 1D, ~8.22 in 2D; hbar*w_D = U_dd f_max/sqrt(gamma)."""
    if dim == 1:
        return F_MAX_1D
    f, _ = phonon_grid_2d(bz_grid(2, grid), cutoff)
    return float(np.max(f))


def transverse_spectrum_hom(q, nu_perp_tilde, gamma):
    """Transverse 'optical' phonons of the 1D chain under confinement nu_perp.

    omega_{y,z}(q)^2 = nu_perp^2 - alpha_{y,z} f(q)^2/(4 gamma), alpha_y=1,
    alpha_z=3, all in units U_dd/hbar.  A negative radicand is returned as an
    imaginary frequency (instability data, not an error).
    """
    if nu_perp_tilde < 0 or gamma <= 0:
        raise ConfigError("nu_perp_tilde must be >= 0 and gamma > 0")
    f2 = float(f_1d(fold_1d(q))) ** 2
    disc_y = nu_perp_tilde**2 - f2 / (4.0 * gamma)
    disc_z = nu_perp_tilde**2 - 3.0 * f2 / (4.0 * gamma)
    to_omega = lambda d: complex(math.sqrt(d)) if d >= 0 else 1j * math.sqrt(-d)
    return TransverseMode(q=float(q), omega_y=to_omega(disc_y),
                          omega_z=to_omega(disc_z),
                          stable=(disc_y >= 0 and disc_z >= 0))


def zigzag_threshold(gamma):
    """Minimal nu_perp [U_dd/hbar] keeping the z branch real at q = pi:
    sqrt(279 zeta(5)/8)/sqrt(gamma) ~= 6.01/sqrt(gamma)."""
    return math.sqrt(279.0 * ZETA_5 / 8.0) / math.sqrt(gamma)


# Constant quoted alongside the formula-derived 6.01 in stability reports.
ZIGZAG_CONSTANT_QUOTED = 6.08


def coupling_matrix_hom(dim, q, k, branch=1, kappa=0.0, epsilon=0.0,
                        gamma=1.0, N=None, cutoff=DEFAULT_CUTOFF):
    """Exciton-phonon matrix element M_lambda(q, k) [U_dd].

    M = i gamma^{-1/4} sqrt(1/(N f_lambda(q))) (eps g(q) + kappa [g(k+q) - g(k)]).
    N = None keeps the 1/sqrt(N) factor symbolic (returns M*sqrt(N)).
    """
    nfac = 1.0 if N is None else 1.0 / math.sqrt(N)
    if dim == 1:
        q1 = float(fold_1d(q))
        if q1 == 0.0:
            return CouplingElement(q=q1, k=k, branch=1, g_q=0.0, M=0.0 + 0.0j)
        f = float(f_1d(q1))
        gq = float(g_1d(q1))
        amp = epsilon * gq + kappa * float(g_1d(k + q1) - g_1d(k))
    elif dim == 2:
        qv = fold_2d(q)[0]
        if np.allclose(qv, 0.0):
            return CouplingElement(q=qv, k=k, branch=branch, g_q=0.0, M=0.0 + 0.0j)
        lam = branch - 1
        fs, pol = phonon_grid_2d(qv[None, :], cutoff)
        f = float(fs[0, lam])
        e_lam = pol[0, :, lam]
        kv = np.asarray(k, dtype=float)
        sites = _tri_sites(cutoff)
        vecs = kernels.sin_vec(np.array([qv, kv + qv, kv]), sites)
        gs = (3.0 / math.sqrt(2.0)) * vecs @ e_lam
        gq = float(gs[0])
        amp = epsilon * gq + kappa * float(gs[1] - gs[2])
    else:
        raise ConfigError("dim must be 1 or 2")
    m = 1j * gamma**-0.25 * nfac / math.sqrt(f) * amp
    return CouplingElement(q=q, k=k, branch=branch, g_q=gq, M=m)


def bz_grid(dim, n):
    """Uniform Gamma-centered grid: 1D n points in (-pi, pi]; 2D n*n points of
    the reciprocal primitive cell (equivalent to the hexagonal BZ by
    periodicity)."""
    idx = np.arange(n) - n // 2 + 1
    if dim == 1:
        return 2.0 * np.pi * idx / n
    if dim == 2:
        frac = idx / n
        i, j = np.meshgrid(frac, frac, indexing="ij")
        return np.outer(i.ravel(), B1_2D) + np.outer(j.ravel(), B2_2D)
    raise ConfigError("dim must be 1 or 2")
