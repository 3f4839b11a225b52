"""Conversion between physical molecule/crystal parameters and the
dimensionless frame (a0 = 1, U_dd = 1, mass gamma) used everywhere else.

Only this module touches SI constants.
"""

import dataclasses
import math

import numpy as np

from . import constants as const
from .errors import ConfigError
from .specfun import LAMBDA, ZETA_3


@dataclasses.dataclass(frozen=True)
class MoleculeParams:
    """Physical constants of one molecular species.

    mu0      axis-fixed dipole moment [Debye]
    B        rotational constant [Hz] (B/h)
    mass     molecular mass [amu]
    gamma_sr spin-rotation constant [Hz]; 0 for a closed-shell species
    """

    mu0: float
    B: float
    mass: float
    gamma_sr: float = 0.0

    def __post_init__(self):
        if self.mu0 <= 0 or self.B <= 0 or self.mass <= 0:
            raise ConfigError("mu0, B and mass must be positive")
        if self.gamma_sr < 0:
            raise ConfigError("gamma_sr must be non-negative")


@dataclasses.dataclass(frozen=True)
class CrystalScales:
    """Dimensionless frame of one crystal configuration.

    a0          lattice spacing [m]
    U_dd        dipole-dipole energy mu_g^2/(4 pi eps0 a0^3) [J]
    gamma       U_dd / (hbar^2 / m a0^2)
    dimension   1 or 2
    temperature [K]
    tau         sqrt(gamma) k_B T / U_dd
    """

    a0: float
    U_dd: float
    gamma: float
    dimension: int
    temperature: float
    tau: float

    @property
    def U_dd_hz(self):
        """U_dd expressed as an ordinary frequency U_dd/h [Hz]."""
        return self.U_dd / const.PLANCK_H

    @property
    def rate_unit(self):
        """U_dd/hbar [rad/s]: one dimensionless rate unit."""
        return self.U_dd / const.HBAR

    @property
    def time_unit(self):
        """hbar/U_dd [s]: one dimensionless time unit."""
        return const.HBAR / self.U_dd

    def energy_to_si(self, e):
        """Dimensionless energy (units of U_dd) -> Joule."""
        return np.asarray(e) * self.U_dd

    def energy_from_si(self, e_joule):
        return np.asarray(e_joule) / self.U_dd

    def length_to_si(self, x):
        """Dimensionless length (units of a0) -> meter."""
        return np.asarray(x) * self.a0

    def length_from_si(self, x_m):
        return np.asarray(x_m) / self.a0


def dipole_dipole_energy(mu_g_debye, a0_m):
    """U_dd = mu_g^2 / (4 pi eps0 a0^3) [J]."""
    mu = mu_g_debye * const.DEBYE
    return mu**2 / (4.0 * math.pi * const.EPSILON_0 * a0_m**3)


def derive_scales(mol, mu_g, a0, T, dim):
    """Build the dimensionless frame from SI inputs.

    mu_g is the induced dipole of the qubit ground state [Debye]; its sign is
    irrelevant (U_dd depends on mu_g^2), so the magnitude is used.  T in K.
    """
    if a0 <= 0 or abs(mu_g) == 0:
        raise ConfigError("mu_g and a0 must be non-zero and positive")
    if T < 0:
        raise ConfigError("temperature must be non-negative")
    if dim not in (1, 2):
        raise ConfigError("dimension must be 1 or 2")
    u_dd = dipole_dipole_energy(abs(mu_g), a0)
    mass_kg = mol.mass * const.AMU
    e_kin = const.HBAR**2 / (mass_kg * a0**2)
    gamma = u_dd / e_kin
    tau = math.sqrt(gamma) * const.K_B * T / u_dd
    return CrystalScales(a0=a0, U_dd=u_dd, gamma=gamma, dimension=dim,
                         temperature=T, tau=tau)


def trap_frequency_relation(gamma, N):
    """Return hbar*nu/U_dd for the harmonic confinement that produces unit
    center density (a(0) = a0) in an N-molecule chain:

        hbar*nu * 2^{-5/2} sqrt(gamma Lambda^2 / zeta(3)) = U_dd / N.
    """
    if gamma <= 0:
        raise ConfigError("gamma must be positive")
    if N < 2:
        raise ConfigError("need at least two molecules")
    return 2.0**2.5 / (N * math.sqrt(gamma * LAMBDA**2 / ZETA_3))


def trap_frequency_si(gamma, N, scales):
    """Trap frequency nu [rad/s] corresponding to trap_frequency_relation."""
    return trap_frequency_relation(gamma, N) * scales.rate_unit
