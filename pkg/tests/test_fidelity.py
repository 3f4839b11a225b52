"""Cavity transfer: collective coupling, inhomogeneous broadening of the
collective mode and the optimal-detuning fidelity."""

import math

import numpy as np
import pytest

from dipcrystal import fidelity as fid
from dipcrystal import trapped as tr
from dipcrystal.errors import ConfigError


@pytest.fixture(scope="module")
def chain100():
    return tr.equilibrium_positions(100)


def test_single_and_collective_coupling():
    g = fid.single_molecule_coupling_hz(0.5)
    assert g == pytest.approx(80e3)
    g_n = fid.collective_coupling_hz(g, n_molecules=1e4)
    assert g_n == pytest.approx(8e6)
    # mode-profile path agrees with the explicit count for a flat profile
    u = np.ones(25)
    assert fid.collective_coupling_hz(g, u=u) == pytest.approx(5.0 * g)
    with pytest.raises(ConfigError):
        fid.collective_coupling_hz(g)
    with pytest.raises(ConfigError):
        fid.single_molecule_coupling_hz(0.0)


def test_mode_profile_kinds(chain100):
    x = chain100.positions
    flat = fid.mode_profile(x, "flat")
    assert np.all(flat == 1.0)
    cos = fid.mode_profile(x, "cosine", lambda_c=4.0 * chain100.L)
    assert np.all(np.abs(cos) <= 1.0)
    assert cos[len(cos) // 2] > 0.99
    with pytest.raises(ConfigError):
        fid.mode_profile(x, "cosine")
    with pytest.raises(ConfigError):
        fid.mode_profile(x, "gaussian")


def test_overlaps_normalized_and_concentrated(chain100):
    ex = tr.exciton_modes_trapped(chain100)
    z = fid.mode_overlaps(ex)
    assert abs(float(np.sum(z**2)) - 1.0) < 1e-12
    # driving with an exact eigenmode concentrates z on that mode and the
    # spectral variance I_exc vanishes
    u = ex.modefunctions[:, 4]
    res = fid.inhomogeneous_W(chain100, gamma=25.0, tau=0.0,
                              exciton_basis=ex, u=u)
    assert res.I_exc < 1e-20


def test_broadening_zero_temperature_values(chain100):
    res = fid.inhomogeneous_W(chain100, gamma=12.54, tau=0.0)
    assert res.I_exc == pytest.approx(0.405, abs=0.01)
    assert res.I_phon == pytest.approx(1.345, abs=0.05)
    assert res.W_dimensionless == pytest.approx(
        math.sqrt(res.I_exc + res.I_phon / math.sqrt(12.54)), rel=1e-12)


def test_broadening_grows_with_temperature(chain100):
    cold = fid.inhomogeneous_W(chain100, gamma=25.0, tau=0.0)
    hot = fid.inhomogeneous_W(chain100, gamma=25.0, tau=3.0)
    assert hot.I_phon > cold.I_phon
    assert hot.I_exc == pytest.approx(cold.I_exc, rel=1e-12)


def test_cosine_mode_reduces_exciton_variance(chain100):
    i_flat = fid.inhomogeneous_W(chain100, gamma=25.0, tau=0.0).I_exc
    u = fid.mode_profile(chain100.positions, "cosine",
                         lambda_c=2.0 * chain100.L)
    i_cos = fid.inhomogeneous_W(chain100, gamma=25.0, tau=0.0, u=u).I_exc
    assert i_cos < i_flat


def test_optimal_detuning_closed_forms_and_scaling():
    g, gc, w = 2.0 * math.pi * 8e6, 2.0 * math.pi * 1e4, 2.0 * math.pi * 2e6
    res = fid.transfer_fidelity(8e6, 1e4, 2e6)
    d_star = 2.0 * math.pi * res.delta_opt_hz
    assert d_star == pytest.approx((math.pi * g**2 * w**2 / gc) ** (1 / 3),
                                   rel=1e-12)
    err = 0.75 * (math.pi / 2.0) ** (4.0 / 3.0) * (gc * w / g**2) ** (2.0 / 3.0)
    assert 1.0 - res.fidelity == pytest.approx(err, rel=1e-12)
    assert res.gate_time_s == pytest.approx(math.pi * d_star / (2.0 * g**2),
                                            rel=1e-12)
    # gate error scales as the 2/3 power of Gamma_c W / g_N^2
    e8 = 1.0 - fid.transfer_fidelity(8e6, 8e4, 2e6).fidelity
    e1 = 1.0 - fid.transfer_fidelity(8e6, 1e4, 2e6).fidelity
    assert e8 / e1 == pytest.approx(4.0, rel=1e-10)
    e_g = 1.0 - fid.transfer_fidelity(16e6, 1e4, 2e6).fidelity
    assert e1 / e_g == pytest.approx(4.0 ** (2.0 / 3.0) * 1.0, rel=1e-10)
    # the error depends only on the combination Gamma_c W / g_N^2
    e_s = 1.0 - fid.transfer_fidelity(8e7, 1e5, 2e7).fidelity
    assert e_s == pytest.approx(e1, rel=1e-10)


def test_fidelity_monotonicity():
    base = fid.transfer_fidelity(8e6, 1e4, 2e6).fidelity
    assert fid.transfer_fidelity(16e6, 1e4, 2e6).fidelity > base
    assert fid.transfer_fidelity(8e6, 1e3, 2e6).fidelity > base
    assert fid.transfer_fidelity(8e6, 1e4, 1e6).fidelity > base
    # W = 0: perfect transfer, zero optimal detuning
    perfect = fid.transfer_fidelity(8e6, 1e4, 0.0)
    assert perfect.fidelity == 1.0
    with pytest.raises(ConfigError):
        fid.transfer_fidelity(0.0, 1e4, 1e6)


def test_case_study_headline_numbers():
    res = fid.case_study_cabr(n_crystal=200)
    assert res.U_dd_hz == pytest.approx(215.6e3, rel=0.01)
    assert res.gamma == pytest.approx(12.54, rel=0.01)
    assert res.g_N_hz == pytest.approx(8e6, rel=1e-12)
    assert res.W_hz == pytest.approx(2e6, rel=0.1)
    assert res.fidelity == pytest.approx(0.994, abs=0.002)
    assert 0.1e-6 < res.gate_time_s < 0.2e-6
    assert res.T_bound_K == pytest.approx(20.7e-6, rel=0.02)
