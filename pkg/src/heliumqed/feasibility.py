"""Closed-form experimental parameters and figures of merit.

Everything here is algebra on a PhysicalParams record: trap frequency,
Lamb-Dicke parameters, vacuum and laser Rabi couplings, cavity decay,
critical photon/atom numbers, and the thermal vacuum probability.

All frequencies are angular (rad/s); the CLI prints both rad/s and Hz.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict

from .constants import C_LIGHT, E_CHARGE, EPS0, HBAR, K_B, M_E


class ParameterError(ValueError):
    pass


def lambda_from_epsilon(epsilon_he: float) -> float:
    """Image-charge strength Lambda = (eps-1)/(4(eps+1))."""
    return (epsilon_he - 1.0) / (4.0 * (epsilon_he + 1.0))


@dataclass
class PhysicalParams:
    """Experimental inputs, SI units.

    Defaults are the reference operating point: E_perp = 3e4 V/m electrode
    field at depth h = 0.5 um, a 1 mm cavity of finesse 4.4e5 with 20 um
    waist, superfluid helium at 2.2 K, and a 1e4 rad/s qubit decay rate.
    """

    lambda_image: float = 0.0069    # image-potential strength Lambda
    epsilon_he: float = 1.0568      # helium dielectric constant
    e_perp: float = 3.0e4           # holding field E_perp [V/m]
    depth_h: float = 5.0e-7         # electrode depth h [m]
    cavity_len: float = 1.0e-3      # cavity length L [m]
    finesse: float = 4.4e5          # cavity finesse F
    waist: float = 20.0e-6          # cavity waist w [m]
    temperature: float = 2.2        # bath temperature T [K]
    atom_decay: float = 1.0e4       # qubit decay gamma [rad/s]
    laser_amp: float = 0.0          # drive amplitude E_z [V/m]
    laser_phase: float = 0.0        # drive phase phi_l [rad]
    standing_phase: float = 0.0     # cavity standing-wave phase phi_c (fixed 0)

    def __post_init__(self):
        positive = {
            "lambda_image": self.lambda_image,
            "epsilon_he": self.epsilon_he,
            "e_perp": self.e_perp,
            "depth_h": self.depth_h,
            "cavity_len": self.cavity_len,
            "waist": self.waist,
            "temperature": self.temperature,
            "atom_decay": self.atom_decay,
        }
        for name, value in positive.items():
            if value <= 0:
                raise ParameterError(f"{name} must be strictly positive, got {value}")
        if self.finesse < 1:
            raise ParameterError(f"finesse must be >= 1, got {self.finesse}")
        if self.laser_amp < 0:
            raise ParameterError("laser_amp must be non-negative")
        if self.standing_phase != 0.0:
            raise ParameterError("only standing_phase = 0 is supported")

    def check_lambda_consistency(self, rtol: float = 0.05) -> bool:
        """Whether lambda_image matches (eps-1)/(4(eps+1)) within rtol."""
        derived = lambda_from_epsilon(self.epsilon_he)
        return abs(self.lambda_image - derived) <= rtol * derived


@dataclass
class FeasibilityReport:
    """All derived figures of merit; frequencies angular [rad/s]."""

    bohr_radius: float
    nu: float
    omega_a: float
    omega_c: float
    eta_c: float
    eta_l: float
    omega_rabi_c: float
    omega_rabi_c_tilde: float
    omega_rabi_l: float
    omega_rabi_l_tilde: float
    g0: float
    kappa: float
    n0: float
    cap_n0: float
    p0: float
    mode_volume: float
    loc_length: float
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return asdict(self)


def trap_frequency(e_perp: float, depth_h: float) -> float:
    """In-plane vibrational frequency nu = sqrt(e E_perp / (m_e h)) [rad/s]."""
    if e_perp <= 0 or depth_h <= 0:
        raise ParameterError("e_perp and depth_h must be positive")
    return math.sqrt(E_CHARGE * e_perp / (M_E * depth_h))


def lamb_dicke(omega: float, nu: float) -> float:
    """LD parameter eta = omega sqrt(hbar/(2 m_e nu)) / c."""
    if omega < 0 or nu <= 0:
        raise ParameterError("omega must be >= 0 and nu > 0")
    return omega * math.sqrt(HBAR / (2.0 * M_E * nu)) / C_LIGHT


def coupling_strengths(
    laser_amp: float,
    z_ge: float,
    z_diff: float,
    omega_c: float,
    volume: float,
) -> tuple[float, float, float, float]:
    """(Omega_c, Omega_c_tilde, Omega_l, Omega_l_tilde), all angular.

    Omega_c       = e z_ge   sqrt(omega_c / (8  hbar eps0 V))
    Omega_c_tilde = e z_diff sqrt(omega_c / (32 hbar eps0 V))
    Omega_l       = e z_ge   E_z / (2 hbar)
    Omega_l_tilde = e z_diff E_z / (4 hbar)
    """
    if volume <= 0 or omega_c <= 0:
        raise ParameterError("volume and omega_c must be positive")
    omega_rabi_c = E_CHARGE * z_ge * math.sqrt(omega_c / (8.0 * HBAR * EPS0 * volume))
    omega_rabi_c_tilde = E_CHARGE * z_diff * math.sqrt(
        omega_c / (32.0 * HBAR * EPS0 * volume)
    )
    omega_rabi_l = E_CHARGE * z_ge * laser_amp / (2.0 * HBAR)
    omega_rabi_l_tilde = E_CHARGE * z_diff * laser_amp / (4.0 * HBAR)
    return omega_rabi_c, omega_rabi_c_tilde, omega_rabi_l, omega_rabi_l_tilde


def mode_volume(waist: float, cavity_len: float) -> float:
    """Gaussian mode volume V = pi (w/2)^2 L."""
    if waist <= 0 or cavity_len <= 0:
        raise ParameterError("waist and cavity_len must be positive")
    return math.pi * (waist / 2.0) ** 2 * cavity_len


def cavity_figures(
    finesse: float,
    cavity_len: float,
    waist: float,
    atom_decay: float,
    nu: float,
    g0: float,
) -> tuple[float, float, float, float, float]:
    """(kappa, n0, N0, V, L_parallel).

    kappa = c pi / (2 F L); n0 = gamma^2/(2 g0^2); N0 = 2 kappa gamma/g0^2;
    V = pi (w/2)^2 L; L_parallel = sqrt(hbar/(m_e nu)).
    """
    if finesse <= 0 or cavity_len <= 0 or waist <= 0:
        raise ParameterError("finesse, cavity_len, waist must be positive")
    if g0 <= 0:
        raise ParameterError("g0 must be positive (n0, N0 divide by it)")
    kappa = C_LIGHT * math.pi / (2.0 * finesse * cavity_len)
    n0 = atom_decay**2 / (2.0 * g0**2)
    cap_n0 = 2.0 * kappa * atom_decay / g0**2
    volume = mode_volume(waist, cavity_len)
    loc_length = math.sqrt(HBAR / (M_E * nu))
    return kappa, n0, cap_n0, volume, loc_length


def thermal_vacuum_probability(omega_c: float, temperature: float) -> float:
    """P0 = 1 - exp(-hbar omega_c / (k_B T)): vacuum weight of the thermal state."""
    if omega_c <= 0 or temperature <= 0:
        raise ParameterError("omega_c and temperature must be positive")
    return 1.0 - math.exp(-HBAR * omega_c / (K_B * temperature))


def build_report(
    params: PhysicalParams,
    omega_a: float,
    z_ge: float,
    z_diff: float,
    bohr_radius: float,
) -> FeasibilityReport:
    """Assemble the full figure-of-merit report at resonance omega_c = omega_a."""
    nu = trap_frequency(params.e_perp, params.depth_h)
    omega_c = omega_a  # resonant operating point
    volume = mode_volume(params.waist, params.cavity_len)
    rc, rct, rl, rlt = coupling_strengths(
        params.laser_amp, z_ge, z_diff, omega_c, volume
    )
    g0 = 2.0 * rc
    kappa, n0, cap_n0, volume, loc_length = cavity_figures(
        params.finesse, params.cavity_len, params.waist,
        params.atom_decay, nu, g0,
    )
    notes = []
    if not params.check_lambda_consistency():
        notes.append(
            "lambda_image is inconsistent with (eps-1)/(4(eps+1)) "
            f"= {lambda_from_epsilon(params.epsilon_he):.4e}"
        )
    notes.append(
        "loc_length is the formula value sqrt(hbar/(m_e nu)); the commonly "
        "quoted 0.3 nm is inconsistent with that formula (expected ~34 nm at "
        "nu/2pi = 16 GHz), though still far below the mm-scale wavelength"
    )
    return FeasibilityReport(
        bohr_radius=bohr_radius,
        nu=nu,
        omega_a=omega_a,
        omega_c=omega_c,
        eta_c=lamb_dicke(omega_c, nu),
        eta_l=lamb_dicke(omega_c, nu),  # resonant drive: omega_l = omega_c
        omega_rabi_c=rc,
        omega_rabi_c_tilde=rct,
        omega_rabi_l=rl,
        omega_rabi_l_tilde=rlt,
        g0=g0,
        kappa=kappa,
        n0=n0,
        cap_n0=cap_n0,
        p0=thermal_vacuum_probability(omega_c, params.temperature),
        mode_volume=volume,
        loc_length=loc_length,
        notes=notes,
    )
