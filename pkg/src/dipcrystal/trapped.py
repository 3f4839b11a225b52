"""Harmonically confined 1D dipolar crystal: equilibrium positions, density
profile, exciton/phonon eigenproblems with analytic overlays, the
exciton-phonon coupling tensor, the Lindemann melting parameter and the
stability report.

Units: positions in the center spacing a0 = 1/n(0), energies in U_dd, mode
frequencies in U_dd/hbar.  The self-assembly convention (unit center density)
pins the trap curvature of the dimensionless energy

    E_pot = (w/2) sum_i x_i^2 + sum_{i<j} 1/|x_i - x_j|^3

to w = gamma nu_tilde^2 = 32 zeta(3)/(Lambda N)^2, independent of how gamma
and nu_tilde are split.
"""

import dataclasses
import math

import numpy as np
from scipy.linalg import cho_factor, cho_solve, eigh

from . import constants as const
from .errors import ConfigError, ConvergenceError
from .specfun import LAMBDA, ZETA_3, ZETA_5

F_MAX_1D = math.sqrt(93.0 * ZETA_5 / 2.0)


def canonical_trap_curvature(N):
    """w = gamma*nu_tilde^2 enforcing n(0) = 1 for N molecules."""
    return 32.0 * ZETA_3 / (LAMBDA * N) ** 2


@dataclasses.dataclass(frozen=True)
class TrappedCrystal:
    N: int
    nu_tilde: float           # hbar*nu/U_dd consistent with w (given gamma)
    w: float                  # dimensionless trap curvature
    positions: np.ndarray     # ascending, symmetric about 0 [a0]
    L: float                  # analytic chain length Lambda*N [a0]
    n0: float                 # center density [1/a0] (= 1 by construction)

    def density(self, x):
        """Analytic profile n(x) = n0 (1 - 4x^2/L^2)^{1/3}."""
        arg = np.clip(1.0 - 4.0 * np.asarray(x, dtype=float) ** 2 / self.L**2,
                      0.0, None)
        return self.n0 * arg ** (1.0 / 3.0)


def _initial_guess(N, L):
    # invert the cumulative of n(x) = (1-4x^2/L^2)^{1/3} on a fine grid
    xg = np.linspace(-L / 2.0, L / 2.0, 4001)
    dens = (np.clip(1.0 - 4.0 * xg**2 / L**2, 0.0, None)) ** (1.0 / 3.0)
    cum = np.concatenate([[0.0], np.cumsum((dens[1:] + dens[:-1]) / 2.0 *
                                           np.diff(xg))])
    cum *= N / cum[-1]
    return np.interp(np.arange(1, N + 1) - 0.5, cum, xg)


def _grad_hess(x, w):
    dx = x[:, None] - x[None, :]
    np.fill_diagonal(dx, np.inf)
    inv4 = np.sign(dx) / np.abs(dx) ** 4
    inv5 = 1.0 / np.abs(dx) ** 5
    grad = w * x - 3.0 * inv4.sum(axis=1)
    hess = -12.0 * inv5
    np.fill_diagonal(hess, 0.0)
    np.fill_diagonal(hess, w + 12.0 * inv5.sum(axis=1))
    return grad, hess


def _energy(x, w):
    dx = np.abs(x[:, None] - x[None, :])
    iu = np.triu_indices(len(x), 1)
    return 0.5 * w * float(x @ x) + float(np.sum(dx[iu] ** -3))


def equilibrium_positions(N, nu_tilde=None, tol=1e-11, max_iter=80):
    """Minimize the confined-chain energy by damped Newton iteration.

    The Hessian (which doubles as the longitudinal phonon matrix) is analytic;
    the initial guess inverts the analytic cumulative density.  nu_tilde is
    stored for bookkeeping; the curvature w is fixed by the unit-center-density
    convention.
    """
    if N < 2:
        raise ConfigError("need at least two molecules")
    w = canonical_trap_curvature(N)
    length = LAMBDA * N
    x = _initial_guess(N, length)
    for _ in range(max_iter):
        grad, hess = _grad_hess(x, w)
        res = float(np.max(np.abs(grad)))
        if res < tol:
            break
        step = cho_solve(cho_factor(hess), -grad)
        e0 = _energy(x, w)
        lam = 1.0
        for _ in range(40):
            x_new = x + lam * step
            if np.all(np.diff(x_new) > 0):
                ok_energy = _energy(x_new, w) <= e0 + 1e-12 * abs(e0)
                ok_res = float(np.max(np.abs(_grad_hess(x_new, w)[0]))) < res
                if ok_energy or ok_res:
                    break
            lam *= 0.5
        else:
            raise ConvergenceError("line search failed",
                                   diagnostics={"residual": res})
        x = x_new
        x = 0.5 * (x - x[::-1])  # enforce reflection symmetry
    else:
        raise ConvergenceError(
            f"equilibrium not converged after {max_iter} iterations",
            diagnostics={"residual": res})
    if nu_tilde is None:
        from .scales import trap_frequency_relation
        # gamma implied by the self-assembly constraint drops out of w; report
        # the nu_tilde belonging to gamma = w/nu^2 at gamma = 32zeta3/(L^2 nu^2)
        nu_tilde = float("nan")
    return TrappedCrystal(N=N, nu_tilde=float(nu_tilde) if nu_tilde else float("nan"),
                          w=w, positions=x, L=length, n0=1.0)


def pair_equilibrium_distance(w):
    """Closed-form two-molecule separation: w d/2 = 3/d^4  =>  d = (6/w)^{1/5}."""
    return (6.0 / w) ** 0.2


@dataclasses.dataclass(frozen=True)
class DensityProfile:
    N: int
    n0: float                 # [1/a0] (dimensionless frame: 1)
    L: float                  # [a0]
    n0_si: float | None = None   # [1/m] when SI inputs supplied
    L_si: float | None = None    # [m]

    def __call__(self, x):
        arg = np.clip(1.0 - 4.0 * np.asarray(x, dtype=float) ** 2 / self.L**2,
                      0.0, None)
        return self.n0 * arg ** (1.0 / 3.0)


def density_profile(N, nu=None, mass_amu=None, mu_g_debye=None):
    """Analytic density profile.  With (nu [rad/s], mass, mu_g) supplied the
    SI center density n(0) = Lambda^{2/5}/(2 zeta(3)^{1/5}) N^{2/5}
    (m nu^2/C_3)^{1/5} and length are filled in as well."""
    n0_si = l_si = None
    if nu is not None:
        if mass_amu is None or mu_g_debye is None:
            raise ConfigError("SI density needs nu, mass_amu and mu_g_debye")
        c3 = (mu_g_debye * const.DEBYE) ** 2 / (4.0 * math.pi * const.EPSILON_0)
        m_kg = mass_amu * const.AMU
        n0_si = (LAMBDA ** 0.4 / (2.0 * ZETA_3 ** 0.2) * N ** 0.4 *
                 (m_kg * nu**2 / c3) ** 0.2)
        l_si = LAMBDA * N / n0_si
    return DensityProfile(N=N, n0=1.0, L=LAMBDA * N, n0_si=n0_si, L_si=l_si)


# ---------------------------------------------------------------------------
# Eigenproblems

@dataclasses.dataclass(frozen=True)
class ModeBasis:
    kind: str                 # exciton | phonon_long | phonon_y | phonon_z
    eigenvalues: np.ndarray   # exciton: E(n) [kappa*U_dd]; phonon: omega [U_dd/hbar]
    modefunctions: np.ndarray  # columns, orthonormal
    unstable: np.ndarray | None = None  # mask of imaginary-frequency modes
    overlay: dict | None = None         # analytic asymptotics for plots/tests


def exciton_modes_trapped(crystal, kappa=1.0):
    """Dense solve of the hopping matrix A_ij = 1/|x_i - x_j|^3 (zero diag).

    eigenvalues are E(n)/kappa sorted so that n = 1 is the long-wavelength
    top of the band (E(1) -> 2 zeta(3) kappa); the constant offset
    hbar*omega_eg is carried elsewhere.  The overlay dict provides the
    analytic long/short-wavelength limits.
    """
    x = crystal.positions
    dx = np.abs(x[:, None] - x[None, :])
    np.fill_diagonal(dx, np.inf)
    a = dx**-3
    vals, vecs = eigh(a)
    order = np.argsort(vals)[::-1]  # n=1 = largest hopping eigenvalue
    vals, vecs = vals[order], vecs[:, order]
    n_half = np.arange(1, crystal.N + 1) - 0.5
    a_const = 4.0 * math.sqrt(ZETA_3) / LAMBDA
    b_n = 3.0 + math.log(LAMBDA * math.sqrt(math.log(crystal.N / 2.0) /
                                            (32.0 * ZETA_3)))
    lw = 2.0 * ZETA_3 - a_const * np.sqrt(
        np.clip(b_n + np.log(crystal.N / n_half), 0.0, None)) * n_half / crystal.N
    overlay = {"long_wavelength": lw, "short_wavelength_min": -1.5 * ZETA_3,
               "top": 2.0 * ZETA_3}
    return ModeBasis(kind="exciton", eigenvalues=kappa * vals,
                     modefunctions=vecs, overlay=overlay)


def _longitudinal_matrix(crystal):
    _, hess = _grad_hess(crystal.positions, crystal.w)
    return hess


def phonon_modes_trapped(crystal, which="long", gamma=1.0, nu_perp_tilde=None):
    """Normal modes of the confined chain.

    which='long': eigensolve of the equilibrium Hessian; omega = sqrt(eig/gamma)
    so that omega(1) = nu exactly (center of mass) and omega(2) = sqrt(5) nu.
    which='y'/'z': transverse branches with pair couplings +3 alpha/(gamma r^5),
    alpha_y = 1, alpha_z = 3; negative eigenvalues are returned as imaginary
    frequencies with the instability mask set (zig-zag onset for 'z').
    """
    if gamma <= 0:
        raise ConfigError("gamma must be positive")
    nu_t = math.sqrt(crystal.w / gamma)
    if which == "long":
        lam, vecs = eigh(_longitudinal_matrix(crystal))
        omega = np.sqrt(np.clip(lam, 0.0, None) / gamma)
        m_idx = np.arange(1, crystal.N + 1)
        overlay = {
            "long_wavelength": nu_t * np.sqrt(1.0 + (3.0 * m_idx**2 - m_idx - 2.0) / 2.0),
            "debye": nu_t * crystal.N * LAMBDA * math.sqrt(93.0 * ZETA_5 / (64.0 * ZETA_3)),
            "sound_wave": (F_MAX_1D / math.sqrt(gamma)) * m_idx / crystal.N,
        }
        return ModeBasis(kind="phonon_long", eigenvalues=omega,
                         modefunctions=vecs, unstable=np.zeros(crystal.N, bool),
                         overlay=overlay)
    if which in ("y", "z"):
        if nu_perp_tilde is None:
            raise ConfigError("transverse branches need nu_perp_tilde")
        alpha = 1.0 if which == "y" else 3.0
        x = crystal.positions
        dx = np.abs(x[:, None] - x[None, :])
        np.fill_diagonal(dx, np.inf)
        inv5 = dx**-5
        mat = (3.0 * alpha / gamma) * inv5
        np.fill_diagonal(mat, nu_perp_tilde**2 -
                         (3.0 * alpha / gamma) * inv5.sum(axis=1))
        lam, vecs = eigh(mat)
        omega = np.where(lam >= 0, np.sqrt(np.abs(lam)),
                         1j * np.sqrt(np.abs(lam)))
        return ModeBasis(kind=f"phonon_{which}", eigenvalues=omega,
                         modefunctions=vecs, unstable=lam < 0)
    raise ConfigError("which must be 'long', 'y' or 'z'")


# ---------------------------------------------------------------------------
# Exciton-phonon coupling tensor

COUPLING_PREFACTOR = (27.0 / (62.0 * ZETA_5)) ** 0.25


def coupling_matrix_trapped(crystal, exciton_basis, phonon_basis,
                            m_list=None, n_select=None):
    """Dimensionless coupling tensor

        M(m,n,n') = (27/(62 zeta5))^{1/4} sqrt(N/m) * (1/2) sum_{i!=j}
                    (x_i-x_j)/|x_i-x_j|^5 (c_m(i)-c_m(j))
                    (C_n'(i)C_n(j) + C_n'(j)C_n(i)),

    assembled per phonon index m as C^T (D_c W) C + transpose with the
    antisymmetric weight W_ij = (x_i-x_j)/|x_i-x_j|^5 (one GEMM pair per m).
    The physical element is -kappa U_dd gamma^{-1/4} M(m,n,n').

    Returns (tensor[m, n', n], m_list, n_select); mode indices are 1-based.
    """
    x = crystal.positions
    n_mol = crystal.N
    dx = x[:, None] - x[None, :]
    np.fill_diagonal(dx, 1.0)
    w_mat = dx / np.abs(dx) ** 5
    np.fill_diagonal(w_mat, 0.0)

    if m_list is None:
        m_list = list(range(1, n_mol + 1))
    if n_select is None:
        n_select = list(range(1, n_mol + 1))
    c_sel = exciton_basis.modefunctions[:, [n - 1 for n in n_select]]
    wc = w_mat @ c_sel
    out = np.empty((len(m_list), len(n_select), len(n_select)))
    for idx, m in enumerate(m_list):
        cm = phonon_basis.modefunctions[:, m - 1]
        y = (c_sel * cm[:, None]).T @ wc
        out[idx] = (y + y.T) * (COUPLING_PREFACTOR * math.sqrt(n_mol / m))
    return out, list(m_list), list(n_select)


# ---------------------------------------------------------------------------
# Lindemann parameter

def _bose(x):
    with np.errstate(over="ignore"):
        return np.where(x > 700, 0.0, 1.0 / np.expm1(np.clip(x, 1e-300, None)))


def lindemann_homogeneous(tau, n_grid=4001):
    """F_h(tau) of the infinite chain:
    F_h^2 = (2/pi) int_0^pi sin^2(q/2)/f(q) (2 N(f/tau)+1) dq."""
    from .homogeneous import f_1d
    from scipy.integrate import simpson
    q = np.linspace(0.0, math.pi, n_grid)
    f = f_1d(q)
    integ = np.zeros_like(q)
    integ[1:] = np.sin(q[1:] / 2.0) ** 2 / f[1:]
    if tau > 0:
        integ[1:] *= 2.0 * _bose(f[1:] / tau) + 1.0
        # q -> 0: sin^2(q/2)/f * 2 tau/f -> tau/(24 zeta3)
        integ[0] = tau / (24.0 * ZETA_3)
    return math.sqrt(2.0 / math.pi * float(simpson(integ, x=q)))


@dataclasses.dataclass(frozen=True)
class LindemannProfile:
    xi: np.ndarray            # 2 x / L at the left neighbor of each bond
    gamma_L: np.ndarray       # position-dependent Lindemann parameter
    F: np.ndarray             # universal gamma^{1/4} Gamma_L
    tau: float
    use_soundwave: bool


def lindemann(crystal, gamma, tau, use_soundwave=False, phonon_basis=None):
    """Gamma_L(x_i, T) = n(x_i) sqrt(<(u_{i+1}-u_i)^2>) from the longitudinal
    mode sum; F = gamma^{1/4} Gamma_L is gamma-independent.

    use_soundwave=True replaces the exact omega(m) by omega_D m/N (the
    sound-wave approximation); the mode functions stay exact.
    """
    if phonon_basis is None:
        phonon_basis = phonon_modes_trapped(crystal, "long", gamma=gamma)
    omega = np.real(phonon_basis.eigenvalues).copy()
    if use_soundwave:
        omega = (F_MAX_1D / math.sqrt(gamma)) * np.arange(1, crystal.N + 1) / crystal.N
    c = phonon_basis.modefunctions
    diff = c[1:, :] - c[:-1, :]          # (N-1, N modes)
    occ = 2.0 * _bose(math.sqrt(gamma) * omega / tau) + 1.0 if tau > 0 \
        else np.ones_like(omega)
    msd = diff**2 @ (occ / (2.0 * gamma * omega))
    x_mid = 0.5 * (crystal.positions[1:] + crystal.positions[:-1])
    gl = crystal.density(x_mid) * np.sqrt(msd)
    return LindemannProfile(xi=2.0 * x_mid / crystal.L, gamma_L=gl,
                            F=gamma**0.25 * gl, tau=tau,
                            use_soundwave=use_soundwave)


LINDEMANN_CRITICAL = 0.42


# ---------------------------------------------------------------------------
# Stability report

ZIGZAG_CONSTANT = math.sqrt(279.0 * ZETA_5 / 8.0)   # ~6.01 from the formula
ZIGZAG_CONSTANT_QUOTED = 6.08                        # constant as published
TUNNELING_C = 5.8


@dataclasses.dataclass(frozen=True)
class StabilityReport:
    gamma: float
    tau: float
    nu_perp_tilde: float
    lindemann_center: float
    lindemann_profile: list   # (xi, Gamma_L) samples
    lindemann_ok: bool
    zigzag_ok: bool
    zigzag_margin: float      # nu_perp / threshold - 1 (formula constant)
    zigzag_ok_quoted: bool    # same test with the published 6.08
    tunneling_rate: float     # Gamma_tun [omega_D]
    inequality_ok: bool
    temperature_ok: bool      # inhomogeneous bound tau <= 5


def stability_report(gamma, tau, nu_perp_tilde, crystal=None):
    """Evaluate every stability criterion of the confined crystal:

    - scale inequality max[hbar^2/(m a0^2), 0.42 k_B T] < U_dd < sqrt(gamma)
      hbar nu_perp / 6.08 (dimensionless: gamma > 1, 0.42 tau < sqrt(gamma),
      nu_perp > 6.08/sqrt(gamma));
    - inhomogeneous temperature bound k_B T <= 5 U_dd/sqrt(gamma) (tau <= 5);
    - zig-zag margin against both the formula constant 6.01 and the published
      6.08;
    - thermal/quantum melting via the Lindemann criterion Gamma_L <= 0.42;
    - zig-zag tunneling attempt rate Gamma_tun = omega_D
      exp(-5.8 (gamma^3 nu_perp_tilde/8)^{1/5}).
    """
    if gamma <= 0 or nu_perp_tilde < 0 or tau < 0:
        raise ConfigError("gamma > 0, nu_perp_tilde >= 0, tau >= 0 required")
    sqg = math.sqrt(gamma)
    threshold = ZIGZAG_CONSTANT / sqg
    threshold_q = ZIGZAG_CONSTANT_QUOTED / sqg
    zig_ok = nu_perp_tilde > threshold
    ineq_ok = (gamma > 1.0) and (0.42 * tau < sqg) and (nu_perp_tilde > threshold_q)
    tun = math.exp(-TUNNELING_C * (gamma**3 * nu_perp_tilde / 8.0) ** 0.2)

    if crystal is not None:
        prof = lindemann(crystal, gamma, tau)
        center = float(prof.gamma_L[len(prof.gamma_L) // 2])
        samples = list(zip(prof.xi.tolist(), prof.gamma_L.tolist()))
        lind_ok = bool(np.all(prof.gamma_L[np.abs(prof.xi) < 0.9]
                              <= LINDEMANN_CRITICAL))
    else:
        center = lindemann_homogeneous(tau) / gamma**0.25
        samples = [(0.0, center)]
        lind_ok = center <= LINDEMANN_CRITICAL
    return StabilityReport(
        gamma=gamma, tau=tau, nu_perp_tilde=nu_perp_tilde,
        lindemann_center=center, lindemann_profile=samples,
        lindemann_ok=lind_ok, zigzag_ok=zig_ok,
        zigzag_margin=nu_perp_tilde / threshold - 1.0,
        zigzag_ok_quoted=nu_perp_tilde > threshold_q,
        tunneling_rate=tun, inequality_ok=ineq_ok, temperature_ok=tau <= 5.0)
