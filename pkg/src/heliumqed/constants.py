"""Physical constants (CODATA 2018, SI units).

All frequencies elsewhere in the package are angular (rad/s) unless a
variable name says otherwise.
"""

import math

# Elementary charge [C] (exact since 2019 SI redefinition)
E_CHARGE = 1.602176634e-19

# Electron mass [kg]
M_E = 9.1093837015e-31

# Reduced Planck constant [J s] (exact)
HBAR = 1.054571817e-34

# Planck constant [J s] (exact)
H_PLANCK = 6.62607015e-34

# Vacuum permittivity [F/m]
EPS0 = 8.8541878128e-12

# Boltzmann constant [J/K] (exact)
K_B = 1.380649e-23

# Speed of light [m/s] (exact)
C_LIGHT = 299792458.0

# Gaussian-units e^2 expressed in SI: e^2/(4 pi eps0)  [J m]
E2_GAUSS = E_CHARGE**2 / (4.0 * math.pi * EPS0)
