"""Vertical-motion problem of the electron above the helium surface.

Analytic pieces: the unperturbed 1D hydrogen spectrum, its wavefunctions
(Laguerre-polynomial form), and their dipole matrix elements. Numerical
piece: the Stark-shifted eigenproblem on a finite-difference grid, which
yields the working transition frequency omega_a.

Gaussian-form expressions are converted to SI via e^2 -> e^2/(4 pi eps0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np
import scipy.integrate
from scipy.linalg import eigh_tridiagonal

from .constants import E_CHARGE, E2_GAUSS, HBAR, M_E


class ConvergenceError(RuntimeError):
    """Quadrature or eigensolver failed to reach its tolerance."""


def bohr_radius(lambda_image: float) -> float:
    """Effective Bohr radius r_B = hbar^2/(m_e e^2 Lambda), ~76 Angstrom."""
    if lambda_image <= 0:
        raise ValueError("lambda_image must be positive")
    return HBAR**2 / (M_E * E2_GAUSS * lambda_image)


def laguerre(n: int, alpha: int, x: float) -> float:
    """Generalized Laguerre polynomial L_n^(alpha)(x), three-term recurrence."""
    if n < 0:
        raise ValueError("polynomial degree must be non-negative")
    if n == 0:
        return 1.0
    prev = 1.0
    cur = 1.0 + alpha - x
    for k in range(2, n + 1):
        prev, cur = cur, ((2 * k - 1 + alpha - x) * cur - (k - 1 + alpha) * prev) / k
    return cur


def wavefunction(n: int, z, r_b: float):
    """Unperturbed bound-state amplitude psi_n(z), normalized on z > 0.

    psi_n(z) = 2 n^(-5/2) r_B^(-3/2) z exp(-z/(n r_B)) L_{n-1}^(1)(2 z/(n r_B))
    """
    if n < 1:
        raise ValueError("principal quantum number must be >= 1")
    z = np.asarray(z, dtype=float)
    lag = np.vectorize(lambda x: laguerre(n - 1, 1, x))(2.0 * z / (n * r_b))
    return 2.0 * n**-2.5 * r_b**-1.5 * z * np.exp(-z / (n * r_b)) * lag


def energy_unperturbed(n: int, lambda_image: float) -> float:
    """Hydrogen-like level E_n = -Lambda^2 e^4 m_e / (2 n^2 hbar^2), in joules."""
    if n < 1:
        raise ValueError("principal quantum number must be >= 1")
    return -(lambda_image**2) * E2_GAUSS**2 * M_E / (2.0 * n**2 * HBAR**2)


def dipole_elements_unperturbed(r_b: float) -> tuple[float, float, float]:
    """(z_gg, z_ee, z_ge) of the n=1,2 states by adaptive quadrature.

    Exact values are z_gg = 1.5 r_B and z_ee = 6 r_B; z_ge ~ 0.5587 r_B
    (commonly rounded to 0.5 r_B).
    """
    if r_b <= 0:
        raise ValueError("Bohr radius must be positive")

    def element(na, nb):
        # integrate in Bohr-radius units so the integrand is O(1) and the
        # quadrature tolerances are meaningful, then rescale by r_b
        val, err = scipy.integrate.quad(
            lambda x: wavefunction(na, x * r_b, r_b)
            * x
            * wavefunction(nb, x * r_b, r_b)
            * r_b,
            0.0, 60.0, epsabs=1e-12, epsrel=1e-10, limit=200,
        )
        if abs(err) > 1e-8:
            raise ConvergenceError(
                f"dipole quadrature <{na}|z|{nb}> did not converge: "
                f"value={val:.6e}, error estimate={err:.2e}"
            )
        return val * r_b

    return element(1, 1), element(2, 2), abs(element(1, 2))


@dataclass
class HydrogenSolution:
    """Grid eigenpair result for the (possibly Stark-shifted) vertical motion."""

    grid: np.ndarray          # z positions [m], z > 0
    e_ground: float           # [J]
    e_excited: float          # [J]
    omega_a: float            # (E_e - E_g)/hbar [rad/s]
    psi_g: np.ndarray         # [m^-1/2]
    psi_e: np.ndarray         # [m^-1/2]
    z_gg: float               # [m]
    z_ee: float               # [m]
    z_ge: float               # [m]
    bohr_radius: float        # [m]

    @property
    def z_diff(self) -> float:
        return self.z_ee - self.z_gg

    def scalars(self) -> dict:
        d = asdict(self)
        for key in ("grid", "psi_g", "psi_e"):
            d.pop(key)
        return d

    def wavefunction_rows(self):
        """(z, psi_g, psi_e) triples for CSV export."""
        return zip(self.grid, self.psi_g, self.psi_e)


def _solve_grid(lambda_image: float, e_perp: float, z_max: float, n_points: int):
    dz = z_max / (n_points + 1)
    z = dz * np.arange(1, n_points + 1)
    v_pot = -lambda_image * E2_GAUSS / z + E_CHARGE * e_perp * z
    diag = HBAR**2 / (M_E * dz**2) + v_pot
    off = np.full(n_points - 1, -HBAR**2 / (2.0 * M_E * dz**2))
    energies, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, 1))
    psi = vecs / math.sqrt(dz)
    # sign convention: first non-negligible component positive
    for k in range(2):
        col = psi[:, k]
        nz = np.nonzero(np.abs(col) > 1e-3 * np.max(np.abs(col)))[0]
        if col[nz[0]] < 0:
            psi[:, k] = -col
    return z, dz, energies, psi


def stark_solve(
    lambda_image: float,
    e_perp: float,
    z_max: float | None = None,
    n_points: int = 8000,
    convergence_rtol: float = 1e-4,
) -> HydrogenSolution:
    """Two lowest eigenpairs of -(hbar^2/2m) d2/dz2 - Lambda e^2/z + e E_perp z.

    Second-order central finite differences on (0, z_max] with Dirichlet
    boundaries. A run at 2*n_points guards convergence.
    """
    r_b = bohr_radius(lambda_image)
    if z_max is None:
        z_max = 40.0 * r_b
    if z_max < 20.0 * r_b:
        raise ValueError(f"z_max={z_max:.3e} m too small; need >= 20 r_B")
    if n_points < 2000:
        raise ValueError("n_points must be >= 2000")
    if e_perp < 0:
        raise ValueError("e_perp must be non-negative")

    z, dz, energies, psi = _solve_grid(lambda_image, e_perp, z_max, n_points)
    _, _, energies_fine, _ = _solve_grid(lambda_image, e_perp, z_max, 2 * n_points)
    scale = abs(energies[0])
    shift = np.max(np.abs(energies - energies_fine)) / scale
    if shift > convergence_rtol:
        raise ConvergenceError(
            f"eigenvalues moved by {shift:.2e} (relative) when doubling the "
            f"grid; refine n_points={n_points} or z_max={z_max:.3e}"
        )

    z_gg = float(np.sum(psi[:, 0] ** 2 * z) * dz)
    z_ee = float(np.sum(psi[:, 1] ** 2 * z) * dz)
    z_ge = float(abs(np.sum(psi[:, 0] * psi[:, 1] * z) * dz))
    return HydrogenSolution(
        grid=z,
        e_ground=float(energies[0]),
        e_excited=float(energies[1]),
        omega_a=float((energies[1] - energies[0]) / HBAR),
        psi_g=psi[:, 0],
        psi_e=psi[:, 1],
        z_gg=z_gg,
        z_ee=z_ee,
        z_ge=z_ge,
        bohr_radius=r_b,
    )
