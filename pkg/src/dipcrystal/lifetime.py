"""Decay of the rotational ensemble qubit: short-time quadratic rate W,
Fermi-Golden-Rule rate Gamma, regime classification and the perturbative
P_e(t) oracle.

All rates are in units U_dd/hbar, times in hbar/U_dd; temperature enters via
tau = sqrt(gamma) k_B T / U_dd.
"""

import dataclasses
import math
import warnings

import numpy as np
from scipy.integrate import simpson
from scipy.optimize import brentq

from . import homogeneous as hom
from .errors import ConfigError
from .specfun import ZETA_3

P_C_THRESHOLD = 0.1  # "much smaller than one" cut for the weak regime


def _bose(x):
    """1/(e^x - 1) with x = hbar*omega/k_B T; zero at infinite x."""
    with np.errstate(over="ignore"):
        return np.where(x > 700, 0.0, 1.0 / np.expm1(np.clip(x, 1e-300, None)))


def integral_I_d(dim, tau, n_grid=None, split=False):
    """BZ average of sum_lambda |g|^2/f * (2 N(f/tau) + 1).

    The q -> 0 limit is attached analytically: the vacuum part vanishes and
    the thermal part tends to 3 zeta(3) tau in 1D (|g|^2 ~ 18 zeta(3)^2 q^2,
    f^2 ~ 12 zeta(3) q^2).
    """
    if tau < 0:
        raise ConfigError("tau must be non-negative")
    if dim == 1:
        n = n_grid or 2049
        q = np.linspace(0.0, math.pi, n)
        f = hom.f_1d(q)
        g2 = hom.g_1d(q) ** 2
        vac = np.zeros_like(q)
        vac[1:] = g2[1:] / f[1:]
        therm = np.zeros_like(q)
        if tau > 0:
            therm[1:] = vac[1:] * 2.0 * _bose(f[1:] / tau)
            therm[0] = 3.0 * ZETA_3 * tau
        # BZ average (1/2pi) int_-pi^pi = (1/pi) int_0^pi
        v = simpson(vac, x=q) / math.pi
        t = simpson(therm, x=q) / math.pi
        return (v, t) if split else v + t
    if dim == 2:
        n = n_grid or 64
        qs = hom.bz_grid(2, n)
        nonzero = np.linalg.norm(qs, axis=1) > 1e-12
        qs = qs[nonzero]
        f, _ = hom.phonon_grid_2d(qs)
        g = hom.g_2d(qs)
        vac_sum = float(np.sum(g**2 / f)) / n**2
        if tau > 0:
            therm_sum = float(np.sum((g**2 / f) * 2.0 * _bose(f / tau))) / n**2
            # q=0 cell: thermal limit by angular average at small |q|
            ang = np.linspace(0.0, 2.0 * math.pi, 16, endpoint=False)
            q_eps = 1e-3 * np.column_stack([np.cos(ang), np.sin(ang)])
            fe, _ = hom.phonon_grid_2d(q_eps)
            ge = hom.g_2d(q_eps)
            lim = float(np.mean(np.sum(ge**2 / fe**2, axis=1))) * 2.0 * tau
            therm_sum += lim / n**2
        else:
            therm_sum = 0.0
        return (vac_sum, therm_sum) if split else vac_sum + therm_sum
    raise ConfigError("dim must be 1 or 2")


def quadratic_rate(dim, kappa, epsilon, gamma, tau, n_grid=None):
    """W = |eps+kappa| gamma^{-1/4} sqrt(I_d(tau))  [U_dd/hbar]."""
    if gamma <= 0:
        raise ConfigError("gamma must be positive")
    return abs(epsilon + kappa) * gamma**-0.25 * math.sqrt(
        integral_I_d(dim, tau, n_grid))


@dataclasses.dataclass(frozen=True)
class GoldenRuleResult:
    Gamma: float              # [U_dd/hbar]
    q0: float | None          # resonant wavevector, None if only q0 = 0
    roots: tuple              # all resonances found in (0, pi]
    branch: str               # 'resonant' | 'thermal' | 'none' | '2d-zero'
    C: float | None = None    # Jacobian factor at q0


def _resonance_function(kappa, gamma):
    sign = -1.0 if kappa > 0 else 1.0  # emission for kappa>0, absorption else

    def h(q):
        return kappa * (hom.J0_1D - hom.j_1d(q)) + sign * hom.f_1d(q) / math.sqrt(gamma)

    return h


def golden_rule_rate(kappa, epsilon, gamma, tau, dim=1, scan_points=400):
    """Fermi-Golden-Rule decay rate of the k = 0 exciton.

    Resolves the energy-conserving delta functions by root finding on
    Omega(q) -+ omega(q) (sign set by sgn(kappa)) plus the analytic Jacobian;
    when the only resonance is q0 = 0, falls back to the thermal q -> 0 rate
    (eps+kappa)^2 sqrt(3 zeta(3)/4) tau.  In 2D the extra factor of |q| in the
    density of states makes the rate vanish identically.
    """
    if gamma <= 0:
        raise ConfigError("gamma must be positive")
    if dim == 2:
        return GoldenRuleResult(Gamma=0.0, q0=None, roots=(), branch="2d-zero")
    if kappa == 0.0:
        # flat exciton band: no resonance away from q=0
        gam = epsilon**2 * math.sqrt(3.0 * ZETA_3 / 4.0) * tau
        return GoldenRuleResult(Gamma=gam, q0=None, roots=(), branch="thermal")

    h = _resonance_function(kappa, gamma)
    qs = np.linspace(1e-6, math.pi, scan_points)
    vals = np.array([h(q) for q in qs])
    roots = []
    for i in np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]:
        roots.append(brentq(h, qs[i], qs[i + 1], xtol=1e-12))
    roots = tuple(sorted(roots))

    if not roots:
        gam = (epsilon + kappa) ** 2 * math.sqrt(3.0 * ZETA_3 / 4.0) * tau
        branch = "thermal" if tau > 0 else "none"
        return GoldenRuleResult(Gamma=gam, q0=None, roots=(), branch=branch)

    q0 = roots[0]
    f0 = float(hom.f_1d(q0))
    g0 = float(hom.g_1d(q0))
    jp = float(hom.j_prime_1d(q0))
    fp = float(hom.f_prime_1d(q0))
    c_fac = 2.0 * g0**2 / (f0 * abs(jp + fp / (math.sqrt(gamma) * kappa)))
    occ = float(_bose(f0 / tau)) if tau > 0 else 0.0
    emission = 1.0 if kappa > 0 else 0.0
    gam = (epsilon + kappa) ** 2 / (abs(kappa) * math.sqrt(gamma)) * c_fac * (occ + emission)
    return GoldenRuleResult(Gamma=gam, q0=q0, roots=roots, branch="resonant", C=c_fac)


def excited_population(t, dim, kappa, epsilon, gamma, tau, N_grid=512):
    """Second-order perturbative P_e(t); the oracle for W and Gamma.

    t may be scalar or array [hbar/U_dd].  The double time integral of the
    phonon correlation function is carried out analytically per mode, leaving
    a discrete Gamma-centered q-grid sum (q = 0 excluded; its coupling is 0).
    """
    if gamma <= 0:
        raise ConfigError("gamma must be positive")
    t = np.atleast_1d(np.asarray(t, dtype=float))
    sqg = math.sqrt(gamma)

    if dim == 1:
        q = hom.bz_grid(1, N_grid)
        q = q[np.abs(q) > 1e-12]
        f = hom.f_1d(q)
        amp = (epsilon + kappa) * hom.g_1d(q)
        m2 = amp**2 / (sqg * N_grid * f)
        omega = f / sqg
        big_omega = kappa * (hom.J0_1D - hom.j_1d(q))
    else:
        qs = hom.bz_grid(2, N_grid)
        qs = qs[np.linalg.norm(qs, axis=1) > 1e-12]
        fmat, _ = hom.phonon_grid_2d(qs)
        gmat = hom.g_2d(qs)
        j0 = float(hom.j_value(2, np.zeros(2)))
        jq = hom.j_value(2, qs)
        f = fmat.ravel()
        amp = ((epsilon + kappa) * gmat).ravel()
        m2 = amp**2 / (sqg * N_grid**2 * f)
        omega = f / sqg
        big_omega = np.repeat(kappa * (j0 - jq), 2)

    occ = _bose(f / tau) if tau > 0 else np.zeros_like(f)
    om_minus = big_omega - omega
    om_plus = big_omega + omega

    def kernel(om):
        # int_0^t dt' int_0^t' ds cos(om s) = (1 - cos(om t))/om^2
        om2 = np.where(np.abs(om) < 1e-9, 1.0, om**2)
        x = np.outer(t, om)
        out = (1.0 - np.cos(x)) / om2[None, :]
        small = np.abs(x) < 1e-6
        t2 = np.broadcast_to((0.5 * t**2)[:, None], x.shape)
        out[small] = t2[small]
        return out

    loss = 2.0 * (kernel(om_minus) @ ((occ + 1.0) * m2) + kernel(om_plus) @ (occ * m2))
    p = 1.0 - loss
    if np.any(p < 0.9):
        warnings.warn("P_e dropped below 0.9: outside the perturbative window")
    return p if p.size > 1 else float(p[0])


@dataclasses.dataclass(frozen=True)
class DecayReport:
    dim: int
    kappa: float
    epsilon: float
    gamma: float
    tau: float
    W: float                  # [U_dd/hbar]
    Gamma: float              # [U_dd/hbar]
    q0: float | None
    gr_branch: str
    delta_E: float            # exciton bandwidth [U_dd]
    omega_D: float            # [U_dd/hbar]
    t_c: float                # [hbar/U_dd]
    P_c: float
    P_c_estimate: float       # paper-style closed-form estimate
    regime: str               # 'weak' | 'strong'
    T_e: float                # [hbar/U_dd]; inf for a fully protected pair

    def to_dict(self, scales=None):
        d = dataclasses.asdict(self)
        d["q0"] = self.q0
        if scales is not None:
            r = scales.rate_unit  # rad/s per dimensionless rate
            d["si"] = {
                "W_hz": self.W * r / (2.0 * math.pi),
                "Gamma_hz": self.Gamma * r / (2.0 * math.pi),
                "t_c_s": self.t_c / r,
                "T_e_s": self.T_e / r,
                "U_dd_hz": scales.U_dd_hz,
            }
        return d


def classify_and_lifetime(dim, kappa, epsilon, gamma, tau,
                          p_c_threshold=P_C_THRESHOLD):
    """Full decay classification: W, Gamma, crossover P_c and lifetime T_e."""
    w = quadratic_rate(dim, kappa, epsilon, gamma, tau)
    gr = golden_rule_rate(kappa, epsilon, gamma, tau, dim=dim)
    if dim == 1:
        delta_e = hom.BANDWIDTH_1D * abs(kappa)
        omega_d = hom.F_MAX_1D / math.sqrt(gamma)
    else:
        ks = hom.bz_grid(2, 48)
        js = hom.j_value(2, ks)
        delta_e = abs(kappa) * float(np.max(js) - np.min(js))
        omega_d = hom.debye_frequency(2, grid=48) / math.sqrt(gamma)
    t_c = 1.0 / max(delta_e, omega_d)
    p_c = w**2 * t_c**2
    if delta_e > omega_d and kappa != 0.0:
        p_c_est = (epsilon + kappa) ** 2 / (kappa**2 * math.sqrt(gamma))
    else:
        p_c_est = (epsilon + kappa) ** 2
    regime = "weak" if p_c < p_c_threshold else "strong"
    if regime == "weak":
        t_e = 1.0 / gr.Gamma if gr.Gamma > 0 else math.inf
    else:
        t_e = 1.0 / w if w > 0 else math.inf
    return DecayReport(dim=dim, kappa=kappa, epsilon=epsilon, gamma=gamma,
                       tau=tau, W=w, Gamma=gr.Gamma, q0=gr.q0,
                       gr_branch=gr.branch, delta_E=delta_e, omega_D=omega_d,
                       t_c=t_c, P_c=p_c, P_c_estimate=p_c_est, regime=regime,
                       T_e=t_e)
