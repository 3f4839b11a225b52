"""Physical constants (CODATA 2018) used for SI <-> dimensionless conversions.

All other modules work in the dimensionless frame (a0 = 1, U_dd = 1, mass gamma)
and must not touch SI constants directly; only `scales` consumes this table.
"""

EPSILON_0 = 8.8541878128e-12   # vacuum permittivity [F/m]
HBAR = 1.054571817e-34         # reduced Planck constant [J s]
PLANCK_H = 6.62607015e-34      # Planck constant [J s] (exact)
K_B = 1.380649e-23             # Boltzmann constant [J/K] (exact)
AMU = 1.66053906660e-27        # atomic mass unit [kg]
DEBYE = 3.33564095198e-30      # 1 Debye [C m] (1e-21/c)
