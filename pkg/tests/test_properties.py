"""Randomized invariants, 100 seeded cases each: dipole/energy consistency,
polarization orthonormality, hopping sum rule, coupling limits and the
sign-flip symmetry of the decay rate."""

import math

import numpy as np

from dipcrystal import homogeneous as hom
from dipcrystal import lifetime as lt
from dipcrystal import rotor
from dipcrystal.scales import MoleculeParams

MOL = MoleculeParams(mu0=4.3, B=2.8e9, mass=120.0)


def test_dipole_equals_energy_slope_100_cases():
    """Induced dipole mu_i = -dE_i/dE_b (Hellmann-Feynman) for random fields,
    M blocks and levels."""
    rng = np.random.default_rng(101)
    h = 1e-5
    for _ in range(100):
        e_b = float(rng.uniform(0.1, 9.0))
        m_n = int(rng.integers(0, 3))
        level = int(rng.integers(0, 4))
        sol = rotor.solve_stark(MOL, e_b, m_n, N_max=16)
        up = rotor.solve_stark(MOL, e_b + h, m_n, N_max=16)
        dn = rotor.solve_stark(MOL, e_b - h, m_n, N_max=16)
        slope = -(up.energies[level] - dn.energies[level]) / (2.0 * h)
        assert abs(sol.dipoles[level] - slope) < 1e-5 * max(
            1.0, abs(sol.dipoles[level]))


def test_phonon_polarizations_orthonormal_100_cases():
    rng = np.random.default_rng(202)
    for _ in range(100):
        q = rng.uniform(-3.0, 3.0, size=(1, 2))
        if np.linalg.norm(q) < 1e-6:
            continue
        f, pol = hom.phonon_grid_2d(q)
        gram = pol[0].T @ pol[0]
        assert np.max(np.abs(gram - np.eye(2))) < 1e-8
        assert np.all(f >= 0.0)


def test_hopping_sum_rule_100_cases():
    """mean_k J(k) = 0 on any uniform BZ grid (zero on-site hopping), checked
    for random grid sizes and offsets."""
    rng = np.random.default_rng(303)
    for _ in range(100):
        n = int(rng.integers(64, 4096))
        shift = float(rng.uniform(0.0, 2.0 * math.pi / n))
        ks = -math.pi + shift + 2.0 * math.pi * np.arange(n) / n
        # aliasing leaves only the j = n, 2n, ... shells: |mean| <= 2 zeta(3)/n^3
        assert abs(float(np.mean(hom.j_1d(ks)))) < 2.5 / n**3 + 1e-12


def test_coupling_vanishes_at_zone_center_100_cases():
    """|M(q, k)| -> 0 as sqrt(q) for q -> 0 (linear vertex divided by the
    acoustic sqrt(q) phonon amplitude), for random parameters."""
    rng = np.random.default_rng(404)
    for _ in range(100):
        kappa = float(rng.uniform(-5.0, 5.0))
        epsilon = float(rng.uniform(-2.0, 2.0))
        gamma = float(rng.uniform(1.0, 50.0))
        k = float(rng.uniform(-math.pi, math.pi))
        q = 1e-6
        el = hom.coupling_matrix_hom(1, q, k, kappa=kappa, epsilon=epsilon,
                                     gamma=gamma)
        el4 = hom.coupling_matrix_hom(1, 4.0 * q, k, kappa=kappa,
                                      epsilon=epsilon, gamma=gamma)
        scale = abs(epsilon) + abs(kappa)
        assert abs(el.M) < 10.0 * math.sqrt(q) * scale
        if abs(el.M) > 1e-8 * scale:
            assert abs(abs(el4.M) / abs(el.M) - 2.0) < 1e-3


def test_sign_flip_symmetry_100_cases():
    """(epsilon, kappa) -> (-epsilon, -kappa) leaves |M| and the quadratic
    rate W unchanged."""
    rng = np.random.default_rng(505)
    for i in range(100):
        kappa = float(rng.uniform(-5.0, 5.0))
        epsilon = float(rng.uniform(-2.0, 2.0))
        gamma = float(rng.uniform(1.0, 50.0))
        q = float(rng.uniform(0.05, math.pi))
        k = float(rng.uniform(-math.pi, math.pi))
        a = hom.coupling_matrix_hom(1, q, k, kappa=kappa, epsilon=epsilon,
                                    gamma=gamma)
        b = hom.coupling_matrix_hom(1, q, k, kappa=-kappa, epsilon=-epsilon,
                                    gamma=gamma)
        assert abs(abs(a.M) - abs(b.M)) < 1e-12 * max(1.0, abs(a.M))
        if i < 20:  # rate integral is costlier; spot-check a subset
            tau = float(rng.uniform(0.0, 2.0))
            w1 = lt.quadratic_rate(1, kappa, epsilon, gamma, tau)
            w2 = lt.quadratic_rate(1, -kappa, -epsilon, gamma, tau)
            assert abs(w1 - w2) < 1e-10 * max(1.0, w1)
