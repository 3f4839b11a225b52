"""Confined chain: equilibrium, density, eigenproblems, coupling tensor,
Lindemann parameter and stability report."""

import math

import numpy as np
import pytest

from dipcrystal import trapped as tr
from dipcrystal.errors import ConfigError
from dipcrystal.specfun import LAMBDA, ZETA_3


@pytest.fixture(scope="module")
def chain100():
    return tr.equilibrium_positions(100)


def test_pair_closed_form():
    c = tr.equilibrium_positions(2)
    d_num = c.positions[1] - c.positions[0]
    assert abs(d_num - tr.pair_equilibrium_distance(c.w)) < 1e-10
    # direct force balance: w d/2 = 3/d^4
    assert abs(c.w * d_num / 2.0 - 3.0 / d_num**4) < 1e-9


def test_equilibrium_symmetry_and_residual(chain100):
    x = chain100.positions
    assert np.all(np.diff(x) > 0)
    assert np.allclose(x, -x[::-1], atol=1e-10)
    grad, _ = tr._grad_hess(x, chain100.w)
    assert np.max(np.abs(grad)) < 1e-10


def test_density_profile_matches_positions(chain100):
    """Local spacing 1/n(x) reproduced to <1% over the bulk of the chain."""
    x = chain100.positions
    mid = 0.5 * (x[1:] + x[:-1])
    spacing = np.diff(x)
    predicted = 1.0 / chain100.density(mid)
    inner = np.abs(mid) < 0.45 * chain100.L
    rel = np.abs(spacing[inner] - predicted[inner]) / predicted[inner]
    assert np.max(rel) < 0.01


def test_density_profile_endpoints_and_scaling():
    from dipcrystal.trapped import density_profile
    prof = density_profile(100)
    assert prof(0.0) == pytest.approx(1.0)
    assert prof(prof.L / 2.0) == 0.0
    # SI center density scales as N^{2/5} and nu^{2/5}
    p1 = density_profile(100, nu=2 * math.pi * 1e4, mass_amu=120,
                         mu_g_debye=0.7)
    p2 = density_profile(1000, nu=2 * math.pi * 1e4, mass_amu=120,
                         mu_g_debye=0.7)
    assert p2.n0_si / p1.n0_si == pytest.approx(10.0 ** 0.4, rel=1e-12)
    p3 = density_profile(100, nu=2 * math.pi * 1e5, mass_amu=120,
                         mu_g_debye=0.7)
    assert p3.n0_si / p1.n0_si == pytest.approx(10.0 ** 0.4, rel=1e-12)


def test_chain_length_approaches_analytic():
    c = tr.equilibrium_positions(300)
    span = c.positions[-1] - c.positions[0]
    assert abs(span / (LAMBDA * 300) - 1.0) < 0.02


def test_exciton_modes(chain100):
    basis = tr.exciton_modes_trapped(chain100, kappa=1.0)
    # orthonormal mode functions, zero eigenvalue sum (traceless hopping)
    gram = basis.modefunctions.T @ basis.modefunctions
    assert np.allclose(gram, np.eye(100), atol=1e-10)
    assert abs(np.sum(basis.eigenvalues)) < 1e-8 * 100
    # kappa scales eigenvalues linearly
    b2 = tr.exciton_modes_trapped(chain100, kappa=-2.0)
    assert np.allclose(b2.eigenvalues, -2.0 * basis.eigenvalues, atol=1e-12)
    # long-wavelength overlay tracks the first eigenvalues
    lw = basis.overlay["long_wavelength"]
    assert np.max(np.abs(lw[:5] - basis.eigenvalues[:5])) < 0.02


def test_phonon_modes_long(chain100):
    gamma = 30.0
    basis = tr.phonon_modes_trapped(chain100, "long", gamma=gamma)
    nu = math.sqrt(chain100.w / gamma)
    assert abs(basis.eigenvalues[0] / nu - 1.0) < 1e-8
    assert abs(basis.eigenvalues[1] / (math.sqrt(5.0) * nu) - 1.0) < 1e-6
    assert np.all(np.diff(basis.eigenvalues) > -1e-15)
    # omega scales as 1/sqrt(gamma) at fixed crystal
    b2 = tr.phonon_modes_trapped(chain100, "long", gamma=4.0 * gamma)
    assert np.allclose(b2.eigenvalues, basis.eigenvalues / 2.0, atol=1e-14)


def test_transverse_zigzag_onset(chain100):
    gamma = 25.0
    thr = tr.ZIGZAG_CONSTANT / math.sqrt(gamma)
    stable = tr.phonon_modes_trapped(chain100, "z", gamma=gamma,
                                     nu_perp_tilde=1.05 * thr)
    soft = tr.phonon_modes_trapped(chain100, "z", gamma=gamma,
                                   nu_perp_tilde=0.95 * thr)
    assert not np.any(stable.unstable)
    assert np.any(soft.unstable)
    # y branch is stiffer: still stable where z already buckles
    y_ok = tr.phonon_modes_trapped(chain100, "y", gamma=gamma,
                                   nu_perp_tilde=0.95 * thr)
    assert not np.any(y_ok.unstable)


def test_coupling_tensor_fd_oracle():
    """M(m,n,n') against a finite-difference perturbation of the hopping
    matrix along exact phonon modes."""
    n_mol = 120
    c = tr.equilibrium_positions(n_mol)
    ex = tr.exciton_modes_trapped(c)
    ph = tr.phonon_modes_trapped(c, "long", gamma=10.0)
    m_list = [2, 7, 40]
    n_sel = [1, 3, 25, 100]
    tens, _, _ = tr.coupling_matrix_trapped(c, ex, ph, m_list=m_list,
                                            n_select=n_sel)

    def hopping(x):
        dx = np.abs(x[:, None] - x[None, :])
        np.fill_diagonal(dx, np.inf)
        return dx**-3

    cs = ex.modefunctions[:, [n - 1 for n in n_sel]]
    h = 1e-6
    diffs, scales = [], []
    for i, m in enumerate(m_list):
        cm = ph.modefunctions[:, m - 1]
        fd = (cs.T @ hopping(c.positions + h * cm) @ cs -
              cs.T @ hopping(c.positions - h * cm) @ cs) / (2.0 * h)
        expected = -fd / 3.0 * tr.COUPLING_PREFACTOR * math.sqrt(n_mol / m)
        diffs.append(np.max(np.abs(tens[i] - expected)))
        scales.append(np.max(np.abs(expected)))
    # parity selection can null an entire (m, n, n') block; compare against
    # the overall tensor scale rather than per-block maxima
    assert max(diffs) / max(scales) < 1e-4


def test_coupling_center_of_mass_decouples(chain100):
    ex = tr.exciton_modes_trapped(chain100)
    ph = tr.phonon_modes_trapped(chain100, "long", gamma=10.0)
    tens, _, _ = tr.coupling_matrix_trapped(chain100, ex, ph, m_list=[1],
                                            n_select=[1, 2, 3])
    assert np.max(np.abs(tens)) < 1e-12


def test_coupling_tensor_symmetric_in_final_states(chain100):
    ex = tr.exciton_modes_trapped(chain100)
    ph = tr.phonon_modes_trapped(chain100, "long", gamma=10.0)
    tens, _, _ = tr.coupling_matrix_trapped(chain100, ex, ph, m_list=[3, 11],
                                            n_select=list(range(1, 21)))
    assert np.allclose(tens, np.transpose(tens, (0, 2, 1)), atol=1e-13)


def test_lindemann_homogeneous_values():
    assert abs(tr.lindemann_homogeneous(0.0) - 0.424) < 0.01
    # high-temperature coefficient F_h ~ 0.278 sqrt(tau)
    taus = np.linspace(10.0, 100.0, 10)
    fs = np.array([tr.lindemann_homogeneous(t) for t in taus])
    coef = float(np.sum(np.sqrt(taus) * fs) / np.sum(taus))
    assert abs(coef - 0.278) < 0.015


def test_lindemann_profile_gamma_universal(chain100):
    p1 = tr.lindemann(chain100, 20.0, 1.0)
    p2 = tr.lindemann(chain100, 500.0, 1.0)
    assert np.max(np.abs(p1.F - p2.F)) < 1e-10
    # trap center reproduces the homogeneous value at tau = 0
    p0 = tr.lindemann(chain100, 50.0, 0.0)
    mid = len(p0.F) // 2
    assert abs(p0.F[mid] - tr.lindemann_homogeneous(0.0)) < 0.01
    # fluctuations grow towards the edges at finite temperature
    p_hot = tr.lindemann(chain100, 50.0, 3.0)
    assert p_hot.F[-2] > p_hot.F[mid]


def test_stability_report_logic(chain100):
    rep = tr.stability_report(20.0, 1.0, 2.0, crystal=chain100)
    assert rep.inequality_ok and rep.zigzag_ok and rep.lindemann_ok
    assert rep.temperature_ok
    assert 0.0 < rep.tunneling_rate < 1.0
    bad = tr.stability_report(20.0, 1.0, 0.5, crystal=None)
    assert not bad.zigzag_ok
    hot = tr.stability_report(20.0, 8.0, 2.0, crystal=None)
    assert not hot.temperature_ok
    with pytest.raises(ConfigError):
        tr.stability_report(-1.0, 0.0, 1.0)


def test_minimum_size():
    with pytest.raises(ConfigError):
        tr.equilibrium_positions(1)
