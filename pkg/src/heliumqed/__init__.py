"""Cavity QED with a trapped surface-state electron above liquid helium.

Modules:
  feasibility  -- closed-form experimental figures of merit
  hydrogen     -- 1D hydrogen + Stark-shifted eigensolver
  operators    -- dense operator algebra over tagged tensor spaces
  hamiltonians -- every model Hamiltonian (static and time-dependent)
  dynamics     -- exact JC solutions and numerical propagation
  states       -- coherent/cat/thermal states, measurement, Wigner grids
  cli          -- command-line orchestration and CSV/JSON artifacts
"""

__version__ = "0.1.0"

from . import (  # noqa: F401
    constants,
    dynamics,
    feasibility,
    hamiltonians,
    hydrogen,
    operators,
    states,
)
