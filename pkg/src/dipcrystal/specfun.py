"""Special functions shared by the spectrum modules.

Provides Riemann zeta constants, polylogarithms Li_n(e^{iq}) evaluated on the
unit circle, and harmonic-oscillator mode functions.  Everything here is a pure
function of its arguments.
"""

import dataclasses
import math

import numpy as np
from scipy.special import bernoulli as _bernoulli
from scipy.special import gamma as _gamma_fn
from scipy.special import zeta as _zeta_fn

from .errors import ConfigError

ZETA_3 = float(_zeta_fn(3))
ZETA_5 = float(_zeta_fn(5))

# Lambda = 5*Gamma(5/6)/(Gamma(1/3)*sqrt(pi)) ~= 1.1886, the shape constant of
# the (1-4x^2/L^2)^(1/3) density profile of the harmonically confined chain.
LAMBDA = float(5.0 * _gamma_fn(5.0 / 6.0) / (_gamma_fn(1.0 / 3.0) * math.sqrt(math.pi)))


def zeta(n):
    """zeta(n) for the orders used in the lattice sums (n = 3 or 5)."""
    if n == 3:
        return ZETA_3
    if n == 5:
        return ZETA_5
    raise ConfigError(f"unsupported zeta order {n!r}; only 3 and 5 are needed")


def _zeta_int(s):
    # Riemann zeta at integer s != 1, including s <= 0 via Bernoulli numbers.
    if s >= 2:
        return float(_zeta_fn(s))
    if s == 0:
        return -0.5
    m = -s  # s < 0: zeta(-m) = -B_{m+1}/(m+1)
    return float(-_bernoulli(m + 1)[m + 1] / (m + 1))


_SERIES_TERMS = 80


def _series_coeffs(n):
    # zeta(n-k)/k! for k = 0.._SERIES_TERMS, with the k = n-1 slot zeroed
    # (that power carries the logarithmic term instead).
    c = np.zeros(_SERIES_TERMS + 1)
    for k in range(_SERIES_TERMS + 1):
        if k == n - 1:
            continue
        c[k] = _zeta_int(n - k) / math.factorial(k)
    return c


_COEFFS = {n: _series_coeffs(n) for n in (2, 3, 4, 5)}
_HARMONIC = {n: sum(1.0 / j for j in range(1, n)) for n in (2, 3, 4, 5)}


def _polylog_circle_any(n, q):
    """Li_n(e^{iq}) for integer n in 2..5, vectorized over q.

    Uses the expansion around mu = iq,
        Li_n(e^mu) = mu^{n-1}/(n-1)! * (H_{n-1} - log(-mu))
                     + sum_{k>=0, k != n-1} zeta(n-k) mu^k / k!,
    absolutely convergent for |q| < 2*pi; truncation error < 2^{-K} at |q| <= pi.
    """
    q = np.asarray(q, dtype=float)
    scalar = q.ndim == 0
    q = np.atleast_1d(q)
    # reduce to the principal interval (-pi, pi]
    q = q - 2.0 * np.pi * np.round(q / (2.0 * np.pi))

    mu = 1j * q
    c = _COEFFS[n]
    acc = np.zeros_like(mu)
    power = np.ones_like(mu)
    for k in range(_SERIES_TERMS + 1):
        if c[k] != 0.0:
            acc += c[k] * power
        power *= mu

    # log(-mu) = log|q| - i*(pi/2)*sign(q); the q = 0 points are patched below.
    nz = q != 0.0
    logterm = np.zeros_like(mu)
    logterm[nz] = np.log(np.abs(q[nz])) - 1j * (0.5 * np.pi) * np.sign(q[nz])
    mu_pow = mu ** (n - 1) / math.factorial(n - 1)
    acc += np.where(nz, mu_pow * (_HARMONIC[n] - logterm), 0.0)
    acc[~nz] = _zeta_int(n)

    return acc[0] if scalar else acc


@dataclasses.dataclass(frozen=True)
class PolylogValue:
    n: int
    q: float
    re: float
    im: float


def polylog_circle(n, q):
    """Li_n(e^{iq}) on the unit circle for n in {3, 4, 5}.

    Scalar q returns a PolylogValue; array q returns a complex array.
    """
    if n not in (3, 4, 5):
        raise ConfigError(f"unsupported polylog order {n!r}")
    val = _polylog_circle_any(n, q)
    if np.ndim(val) == 0:
        return PolylogValue(n=n, q=float(q), re=float(val.real), im=float(val.imag))
    return val


def polylog_re(n, q):
    """Re Li_n(e^{iq}), vectorized."""
    return np.real(_polylog_circle_any(n, q))


def polylog_im(n, q):
    """Im Li_n(e^{iq}), vectorized."""
    return np.imag(_polylog_circle_any(n, q))


def oscillator_mode(n, x, sigma, normalize=False):
    """Oscillator-like envelope Phi_n(x) = H_{n-1}(x/sigma) exp(-x^2/2 sigma^2).

    The Hermite recurrence is renormalized at every step so that mode indices
    up to ~1000 can be evaluated without overflow; with normalize=True the
    result satisfies sum(Phi_n(x_i)^2) = 1 over the supplied grid and the
    running rescaling drops out exactly.
    """
    if sigma <= 0:
        raise ConfigError("sigma must be positive")
    if n < 1:
        raise ConfigError("mode index n starts at 1")
    xi = np.asarray(x, dtype=float) / sigma

    # recur on the Gaussian-weighted functions so the rescaling tracks the
    # physically relevant envelope, not the polynomial growth at the edges
    h_prev = np.zeros_like(xi)
    h = np.exp(-0.5 * xi**2)
    log_scale = 0.0
    for k in range(n - 1):
        h_next = 2.0 * xi * h - 2.0 * k * h_prev
        h_prev, h = h, h_next
        peak = np.max(np.abs(h))
        if peak > 0:
            h = h / peak
            h_prev = h_prev / peak
            log_scale += math.log(peak)

    phi = h
    if normalize:
        norm = math.sqrt(float(np.sum(phi**2)))
        if norm == 0.0:
            raise ConfigError("mode function vanishes on the supplied grid")
        return phi / norm
    # undo the running rescale when it cannot overflow; otherwise keep the
    # rescaled profile (shape is all that matters for large n)
    if log_scale < 600.0:
        phi = phi * math.exp(log_scale)
    return phi
