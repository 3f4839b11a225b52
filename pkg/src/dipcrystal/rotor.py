"""Rigid-rotor Stark solver: induced dipoles, transition dipoles, the pair
parameters (kappa, epsilon) of a chosen qubit state pair, and special bias
field points (sweet/magic).  Optional spin-rotation coupling for 2-Sigma
species with S = 1/2.

Units: bias field E_b in B/mu0, energies in B, dipoles in mu0.
"""

import dataclasses
import math
import warnings

import numpy as np
from scipy.linalg import eigh
from scipy.optimize import brentq

from .errors import ConfigError, ConvergenceError

DIPOLE_FD_STEP = 1e-6  # field step for the Hellmann-Feynman self-check


def _cos_theta_offdiag(n, m):
    """<N+1, M|cos(theta)|N, M> for N = n."""
    return math.sqrt(((n + 1.0) ** 2 - m**2) / ((2.0 * n + 1.0) * (2.0 * n + 3.0)))


def cos_theta_matrix(m, n_max):
    """cos(theta) in the field-free basis |N, M>, N = |m| .. n_max."""
    ns = np.arange(abs(m), n_max + 1)
    mat = np.zeros((len(ns), len(ns)))
    off = np.array([_cos_theta_offdiag(n, m) for n in ns[:-1]])
    mat[np.arange(len(ns) - 1), np.arange(1, len(ns))] = off
    mat[np.arange(1, len(ns)), np.arange(len(ns) - 1)] = off
    return mat


def raising_dipole_matrix(m, n_max):
    """<N', M+1|sin(theta) e^{i phi}|N, M> block, rows N' = |M+1|..n_max,
    columns N = |M|..n_max (real-valued angular factors)."""
    rows = np.arange(abs(m + 1), n_max + 1)
    cols = np.arange(abs(m), n_max + 1)
    mat = np.zeros((len(rows), len(cols)))
    for jc, n in enumerate(cols):
        up = n + 1  # Y_{N+1, M+1} component
        if abs(m + 1) <= up <= n_max:
            mat[np.searchsorted(rows, up), jc] = -math.sqrt(
                (n + m + 1.0) * (n + m + 2.0) / ((2.0 * n + 1.0) * (2.0 * n + 3.0)))
        down = n - 1
        if abs(m + 1) <= down <= n_max and down >= 0:
            mat[np.searchsorted(rows, down), jc] = math.sqrt(
                (n - m) * (n - m - 1.0) / ((2.0 * n - 1.0) * (2.0 * n + 1.0)))
    return mat


@dataclasses.dataclass(frozen=True)
class StarkSolution:
    E_b: float
    M_N: int
    N_max: int
    basis_N: np.ndarray       # field-free N labels of the basis/levels
    energies: np.ndarray      # [B], ascending
    vectors: np.ndarray       # columns = eigenvectors, phase-fixed
    dipoles: np.ndarray       # <cos(theta)> [mu0]

    def index_of(self, label):
        n, m = label
        if m != self.M_N:
            raise ConfigError(f"state {label} not in the M_N={self.M_N} block")
        idx = n - abs(self.M_N)
        if idx < 0 or idx >= len(self.energies):
            raise ConfigError(f"state {label} outside the retained basis")
        return idx

    def energy(self, label):
        return float(self.energies[self.index_of(label)])

    def dipole(self, label):
        return float(self.dipoles[self.index_of(label)])

    def vector(self, label):
        return self.vectors[:, self.index_of(label)]


def _fix_phases(vectors):
    peaks = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[peaks, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def _solve_block(E_b, m, n_max):
    ns = np.arange(abs(m), n_max + 1)
    h = np.diag(ns * (ns + 1.0)) - E_b * cos_theta_matrix(m, n_max)
    energies, vectors = eigh(h)
    return energies, _fix_phases(vectors)


def solve_stark(mol, E_b, M_N, N_max=None):
    """Diagonalize H = B N^2 - mu_z E_b in the fixed-M_N block.

    Adjacent Stark levels within one symmetry block never cross, so the
    ascending eigenvalue index maps one-to-one onto the field-free label
    N = |M_N| + index.  Retained levels are those with N <= N_max - 4 (the
    buffer absorbs truncation error); convergence against an N_max+2 re-solve
    is checked internally.
    """
    if N_max is None:
        N_max = max(10, abs(M_N) + 6)
    if N_max < abs(M_N) + 4:
        raise ConfigError("N_max too small for the requested M_N block")
    n_keep = N_max - abs(M_N) - 3
    e_small, _ = _solve_block(E_b, M_N, N_max)
    e_big, v_big = _solve_block(E_b, M_N, N_max + 2)
    drift = float(np.max(np.abs(e_big[:n_keep] - e_small[:n_keep])))
    if drift > 1e-8:
        raise ConvergenceError(
            f"Stark basis not converged at N_max={N_max} (drift {drift:.2e})",
            diagnostics={"E_b": E_b, "M_N": M_N, "N_max": N_max, "drift": drift})
    cos_mat = cos_theta_matrix(M_N, N_max + 2)
    dipoles = np.einsum("ij,ik,kj->j", v_big, cos_mat, v_big)
    return StarkSolution(E_b=float(E_b), M_N=M_N, N_max=N_max + 2,
                         basis_N=np.arange(abs(M_N), N_max + 3),
                         energies=e_big[:n_keep],
                         vectors=v_big[:, :n_keep],
                         dipoles=dipoles[:n_keep])


@dataclasses.dataclass(frozen=True)
class QubitPairParams:
    g_label: tuple
    e_label: tuple
    E_b: float
    mu_g: float
    mu_e: float
    epsilon: float
    D_r: float
    kappa: float
    eta: float
    omega_eg: float           # [B/hbar]
    theta_x: float            # |<e|mu_x|g>|/mu0
    degenerate_warning: bool = False


def _transition_elements(sol_g, sol_e, g_label, e_label):
    """(|mu_z|, |T|) between two Stark states; T is the sin(theta)e^{+-i phi}
    element for |M_e - M_g| = 1, zero otherwise."""
    dm = sol_e.M_N - sol_g.M_N
    vg = sol_g.vector(g_label)
    ve = sol_e.vector(e_label)
    if dm == 0:
        mu_z = ve @ cos_theta_matrix(sol_g.M_N, sol_g.N_max) @ vg
        return abs(mu_z), 0.0
    if abs(dm) == 1:
        if dm == 1:
            block = raising_dipole_matrix(sol_g.M_N, sol_g.N_max)
        else:
            # <N', M-1|sin e^{-i phi}|N, M> has the magnitudes of the raising
            # block at M -> -M (time reversal); eigenvectors coincide.
            block = raising_dipole_matrix(-sol_g.M_N, sol_g.N_max)
        return 0.0, abs(ve @ block @ vg)
    return 0.0, 0.0


def qubit_pair_params(mol, g, e, E_b, N_max=None):
    """Pair parameters (mu_g, mu_e, epsilon, D_r, kappa, ...) for the qubit
    states |g> = |N, M_N>_Eb and |e> = |N', M_N'>_Eb."""
    n_g, m_g = g
    n_e, m_e = e
    if N_max is None:
        N_max = max(10, max(n_g, n_e) + 6)
    sol_g = solve_stark(mol, E_b, m_g, N_max)
    sol_e = sol_g if m_e == m_g else solve_stark(mol, E_b, m_e, N_max)
    mu_g = sol_g.dipole(g)
    mu_e = sol_e.dipole(e)
    if mu_g == 0.0:
        raise ConfigError("mu_g = 0: pair parameters undefined at this field")
    dm = abs(m_e - m_g)
    mu_z_abs, t_abs = _transition_elements(sol_g, sol_e, g, e)
    if dm == 0:
        eta, mu_perp_sq, theta_x = 1.0, mu_z_abs**2, 0.0
    elif dm == 1:
        # |<e|mu|g>|^2 = (|T|^2)/2 split evenly over mu_x, mu_y
        eta, mu_perp_sq, theta_x = -0.5, t_abs**2 / 2.0, t_abs / 2.0
    else:
        eta, mu_perp_sq, theta_x = 0.0, 0.0, 0.0
    d_r = eta * mu_perp_sq
    degenerate = (dm == 1) and (min(abs(m_g), abs(m_e)) == 0)
    if degenerate:
        warnings.warn(
            "states |N,0> and |N',+-1>: the M_N'=-M_N' partner is degenerate; "
            "resonant leakage must be lifted by additional dressing fields")
    return QubitPairParams(
        g_label=g, e_label=e, E_b=float(E_b), mu_g=mu_g, mu_e=mu_e,
        epsilon=(mu_e - mu_g) / mu_g, D_r=d_r, kappa=d_r / mu_g**2, eta=eta,
        omega_eg=sol_e.energy(e) - sol_g.energy(g), theta_x=theta_x,
        degenerate_warning=degenerate)


def find_field_point(mol, g, e, kind, bracket, N_max=None, tol=1e-10):
    """Locate a sweet spot (epsilon = 0) or magic point (epsilon + kappa = 0)
    in the given bias-field bracket.  Returns (E_b, QubitPairParams)."""
    if kind not in ("sweet", "magic"):
        raise ConfigError("kind must be 'sweet' or 'magic'")

    def target(field):
        p = qubit_pair_params(mol, g, e, field, N_max)
        return p.epsilon if kind == "sweet" else p.epsilon + p.kappa

    lo, hi = bracket
    f_lo, f_hi = target(lo), target(hi)
    if f_lo * f_hi > 0:
        raise ConfigError(
            f"no {kind}-point sign change on bracket [{lo}, {hi}] "
            f"(targets {f_lo:.3g}, {f_hi:.3g})")
    root = brentq(target, lo, hi, xtol=tol)
    return root, qubit_pair_params(mol, g, e, root, N_max)


# ---------------------------------------------------------------------------
# Spin-rotation coupled rotor (2-Sigma, S = 1/2, I = 0)

@dataclasses.dataclass(frozen=True)
class SpinStarkSolution:
    E_b: float
    M_J: float
    N_max: int
    labels: list              # dominant (N, M_N, M_S) per level
    basis: list               # (N, M_N, M_S) basis ordering
    energies: np.ndarray      # [B]
    vectors: np.ndarray

    def index_of(self, label):
        matches = [i for i, lab in enumerate(self.labels) if lab == label]
        if not matches:
            raise ConfigError(f"no level with dominant character {label}")
        return matches[0]


def _spin_basis(m_j, n_max):
    basis = []
    for n in range(n_max + 1):
        for m_s in (-0.5, 0.5):
            m_n = m_j - m_s
            if abs(m_n - round(m_n)) < 1e-9 and abs(round(m_n)) <= n:
                basis.append((n, int(round(m_n)), m_s))
    return basis


def _spin_block(mol, E_b, m_j, n_max):
    basis = _spin_basis(m_j, n_max)
    index = {b: i for i, b in enumerate(basis)}
    gt = mol.gamma_sr / mol.B
    h = np.zeros((len(basis), len(basis)))
    for (n, m_n, m_s), i in index.items():
        h[i, i] = n * (n + 1.0) + gt * m_n * m_s
        # Stark term: same (M_N, M_S), N -> N+1
        up = (n + 1, m_n, m_s)
        if up in index:
            j = index[up]
            h[i, j] += -E_b * _cos_theta_offdiag(n, m_n)
            h[j, i] += -E_b * _cos_theta_offdiag(n, m_n)
        # (gamma_sr/2) N+ S-: (N, M_N, +1/2) -> (N, M_N+1, -1/2)
        if m_s == 0.5:
            flip = (n, m_n + 1, -0.5)
            if flip in index:
                j = index[flip]
                amp = 0.5 * gt * math.sqrt(n * (n + 1.0) - m_n * (m_n + 1.0))
                h[i, j] += amp
                h[j, i] += amp
    energies, vectors = eigh(h)
    return basis, energies, _fix_phases(vectors)


def solve_spin_rotor(mol, E_b, M_J, N_max=None):
    """Diagonalize H = B N^2 + gamma_sr N.S - mu_z E_b in one M_J block."""
    if N_max is None:
        N_max = 10
    basis_s, e_small, _ = _spin_block(mol, E_b, M_J, N_max)
    basis, e_big, v_big = _spin_block(mol, E_b, M_J, N_max + 2)
    n_keep = len(_spin_basis(M_J, N_max - 4))
    drift = float(np.max(np.abs(e_big[:n_keep] - e_small[:n_keep])))
    if drift > 1e-8:
        raise ConvergenceError(
            f"spin-rotor basis not converged at N_max={N_max} (drift {drift:.2e})",
            diagnostics={"E_b": E_b, "M_J": M_J, "N_max": N_max, "drift": drift})
    labels = [basis[int(np.argmax(np.abs(v_big[:, k])))] for k in range(n_keep)]
    return SpinStarkSolution(E_b=float(E_b), M_J=M_J, N_max=N_max + 2,
                             labels=labels, basis=basis,
                             energies=e_big[:n_keep], vectors=v_big[:, :n_keep])


def spin_pair_couplings(mol, E_b, N_max=None):
    """theta_x and the spin-flip exchange kappa for the spin-ensemble pair
    |g> = |1,0>|-1/2> and |e> = |2,0>|+1/2>.

    theta_x = |<e|mu_x|g>|/mu0; kappa_spin = -theta_x^2/mu_g^2 (eta = -1/2
    with the transverse dipole split over mu_x, mu_y).
    """
    if mol.gamma_sr == 0.0:
        mu_g = solve_stark(mol, E_b, 0, N_max).dipole((1, 0))
        return {"theta_x": 0.0, "kappa_spin": 0.0, "mu_g": mu_g}
    if N_max is None:
        N_max = 10
    sol_g = solve_spin_rotor(mol, E_b, -0.5, N_max)
    sol_e = solve_spin_rotor(mol, E_b, +0.5, N_max)
    vg = sol_g.vectors[:, sol_g.index_of((1, 0, -0.5))]
    ve = sol_e.vectors[:, sol_e.index_of((2, 0, +0.5))]
    # mu_x couples (N, M_N, M_S) -> (N', M_N+1, M_S) between the two blocks
    n_basis = sol_g.N_max
    raise_blocks = {m: raising_dipole_matrix(m, n_basis) for m in
                    range(-n_basis, n_basis)}
    elem = 0.0
    idx_e = {b: i for i, b in enumerate(sol_e.basis)}
    for (n, m_n, m_s), ig in [(b, i) for i, b in enumerate(sol_g.basis)]:
        block = raise_blocks.get(m_n)
        if block is None:
            continue
        for np_ in range(abs(m_n + 1), n_basis + 1):
            tgt = (np_, m_n + 1, m_s)
            if tgt in idx_e:
                # raising block rows N'=|M+1|.., columns N=|M|..
                val = block[np_ - abs(m_n + 1), n - abs(m_n)]
                elem += ve[idx_e[tgt]] * val * vg[ig]
    theta_x = abs(elem) / 2.0
    mu_g = float(vg @ _spin_dipole_matrix(sol_g.basis, n_basis) @ vg)
    return {"theta_x": theta_x, "kappa_spin": -theta_x**2 / mu_g**2,
            "mu_g": mu_g}


def _spin_dipole_matrix(basis, n_max):
    index = {b: i for i, b in enumerate(basis)}
    mat = np.zeros((len(basis), len(basis)))
    for (n, m_n, m_s), i in index.items():
        up = (n + 1, m_n, m_s)
        if up in index:
            j = index[up]
            mat[i, j] = mat[j, i] = _cos_theta_offdiag(n, m_n)
    return mat


def spin_flip_rate_estimate(mol, a0):
    """Order-of-magnitude spin-flip rate (U0/h)^2 gamma_sr^2 / B^3 [Hz] with
    U0 = mu0^2/(4 pi eps0 a0^3): phonon-mediated leakage out of the spin
    ensemble qubit.  A scaling estimate (a0^-6, gamma_sr^2), not a computed
    rate."""
    from .scales import dipole_dipole_energy
    from . import constants as const
    u0_hz = dipole_dipole_energy(mol.mu0, a0) / const.PLANCK_H
    return u0_hz**2 * mol.gamma_sr**2 / mol.B**3
