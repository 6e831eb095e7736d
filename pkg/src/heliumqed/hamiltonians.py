"""Hamiltonian builders for the electron-cavity system.

Every builder returns a Joule-valued Operator (hbar explicit); dynamics
divides by hbar once. Time-dependent Hamiltonians are represented as a sum
of constant matrices with e^{i w t} scalar coefficients, which is exact for
every interaction-picture Hamiltonian used here and is what the RK4 kernel
consumes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import HBAR
from . import operators as ops
from .operators import CAVITY, QUBIT, VIBRATION, Operator, TensorSpace

RESONANCE_RTOL = 1e-12


class ResonanceError(ValueError):
    """RWA builder invoked off resonance."""


@dataclass
class ModelFrequencies:
    """All frequencies entering the models, angular [rad/s]."""

    omega_a: float
    omega_c: float
    omega_l: float = 0.0
    nu: float = 0.0
    omega_rabi_c: float = 0.0
    omega_rabi_c_tilde: float = 0.0
    omega_rabi_l: float = 0.0
    omega_rabi_l_tilde: float = 0.0
    eta_c: float = 0.0
    eta_l: float = 0.0
    phi_l: float = 0.0

    def at_cavity_resonance(self) -> bool:
        return abs(self.omega_a - self.omega_c) <= RESONANCE_RTOL * abs(self.omega_a)

    def at_full_resonance(self) -> bool:
        return self.at_cavity_resonance() and (
            abs(self.omega_a - self.omega_l) <= RESONANCE_RTOL * abs(self.omega_a)
        )


@dataclass
class TimeDependentHamiltonian:
    """H(t) = sum_k amp_k * exp(i freq_k t) * mat_k, Joule-valued."""

    space: TensorSpace
    amps: np.ndarray        # complex term amplitudes (include hbar)
    freqs: np.ndarray       # phase frequencies [rad/s]
    mats: np.ndarray        # (n_terms, dim, dim) constant matrices
    max_frequency: float    # stiffness hint for the integrator

    def __post_init__(self):
        self.amps = np.asarray(self.amps, dtype=complex)
        self.freqs = np.asarray(self.freqs, dtype=float)
        self.mats = np.asarray(self.mats, dtype=complex)
        # Hermiticity spot-check at 16 deterministic pseudo-random times
        rng = np.random.default_rng(20260823)
        t_scale = 1.0 if self.max_frequency == 0 else 2.0 * np.pi / self.max_frequency
        for t in rng.uniform(0.0, 10.0 * t_scale, size=16):
            h = self.evaluate(t)
            if not h.is_hermitian():
                raise ValueError(f"H(t) not Hermitian at t={t:.3e}")

    def evaluate(self, t: float) -> Operator:
        coeffs = self.amps * np.exp(1j * self.freqs * t)
        return Operator(self.space, np.tensordot(coeffs, self.mats, axes=1))


def _qubit_matrices(space: TensorSpace):
    sz, sp, sm, sx = ops.qubit_ops()
    return (ops.embed(sz, space, QUBIT).matrix,
            ops.embed(sp, space, QUBIT).matrix,
            ops.embed(sm, space, QUBIT).matrix,
            ops.embed(sx, space, QUBIT).matrix)


def _cavity_matrices(space: TensorSpace):
    b, bd, nb = ops.fock_ops(space.dim_of(CAVITY))
    return (ops.embed(b, space, CAVITY).matrix,
            ops.embed(bd, space, CAVITY).matrix,
            ops.embed(nb, space, CAVITY).matrix)


def h0(freqs: ModelFrequencies, space: TensorSpace) -> Operator:
    """Free Hamiltonian: vibration (if present) + qubit splitting + cavity."""
    if not (space.has(QUBIT) and space.has(CAVITY)):
        raise ops.OperatorError("h0 needs qubit and cavity factors")
    sz, _, _, _ = _qubit_matrices(space)
    _, _, nb = _cavity_matrices(space)
    h = 0.5 * HBAR * freqs.omega_a * sz + HBAR * freqs.omega_c * nb
    if space.has(VIBRATION):
        dim_v = space.dim_of(VIBRATION)
        _, _, na = ops.fock_ops(dim_v)
        na_full = ops.embed(na + 0.5 * np.eye(dim_v), space, VIBRATION).matrix
        h = h + HBAR * freqs.nu * na_full
    return Operator(space, h)


def _ld_exponential_factor(eta: float, space: TensorSpace) -> np.ndarray:
    """exp(i eta (a^dag + a)) + exp(-i eta (a^dag + a)) on the vibration factor."""
    dim_v = space.dim_of(VIBRATION)
    a, ad, _ = ops.fock_ops(dim_v)
    vib_space = TensorSpace(((VIBRATION, dim_v),))
    e_plus = ops.expm(Operator(vib_space, 1j * eta * (ad + a)))
    k = e_plus.matrix + e_plus.matrix.conj().T
    return ops.embed(k, space, VIBRATION).matrix


def h_full_ld(freqs: ModelFrequencies, space: TensorSpace) -> Operator:
    """Full coupling before the Lamb-Dicke reduction (three-factor space)."""
    if not space.has(VIBRATION):
        raise ops.OperatorError("h_full_ld needs a vibration factor")
    sz, _, _, sx = _qubit_matrices(space)
    b, bd, _ = _cavity_matrices(space)
    k = _ld_exponential_factor(freqs.eta_c, space)
    quad = bd + b
    h = h0(freqs, space).matrix
    h = h + HBAR * freqs.omega_rabi_c * quad @ sx @ k
    h = h + HBAR * freqs.omega_rabi_c_tilde * quad @ sz @ k
    return Operator(space, h)


def h_simplified(freqs: ModelFrequencies, space: TensorSpace) -> Operator:
    """Lamb-Dicke-reduced lab-frame Hamiltonian on the (qubit, cavity) space."""
    sz, _, _, sx = _qubit_matrices(space)
    b, bd, _ = _cavity_matrices(space)
    quad = bd + b
    h = h0(freqs, space).matrix
    h = h + 2.0 * HBAR * freqs.omega_rabi_c * quad @ sx
    h = h + 2.0 * HBAR * freqs.omega_rabi_c_tilde * quad @ sz
    return Operator(space, h)


def h_interaction(
    freqs: ModelFrequencies, space: TensorSpace, driven: bool = False
) -> TimeDependentHamiltonian:
    """Interaction-picture Hamiltonian w.r.t. H0, without any RWA.

    Exact phased-term expansion of the Lamb-Dicke-reduced coupling; with
    `driven` the classical-drive terms (laser phases included) are added.
    """
    sz, sp, sm, _ = _qubit_matrices(space)
    b, bd, _ = _cavity_matrices(space)
    wa, wc, wl = freqs.omega_a, freqs.omega_c, freqs.omega_l
    rc, rct = freqs.omega_rabi_c, freqs.omega_rabi_c_tilde
    amps, phase_freqs, mats = [], [], []

    def term(amp, freq, mat):
        amps.append(amp)
        phase_freqs.append(freq)
        mats.append(mat)

    term(2.0 * HBAR * rc, wc - wa, bd @ sm)
    term(2.0 * HBAR * rc, wc + wa, bd @ sp)
    term(2.0 * HBAR * rc, -(wc + wa), b @ sm)
    term(2.0 * HBAR * rc, -(wc - wa), b @ sp)
    term(2.0 * HBAR * rct, wc, sz @ bd)
    term(2.0 * HBAR * rct, -wc, sz @ b)
    max_freq = wa + wc
    if driven:
        rl, rlt = freqs.omega_rabi_l, freqs.omega_rabi_l_tilde
        phase = np.exp(1j * freqs.phi_l)
        term(HBAR * rl / phase, -(wl + wa), sm)
        term(HBAR * rl * phase, wl - wa, sm)
        term(HBAR * rl / phase, wa - wl, sp)
        term(HBAR * rl * phase, wl + wa, sp)
        term(HBAR * rlt / phase, -wl, sz)
        term(HBAR * rlt * phase, wl, sz)
        max_freq = wa + wc + wl
    return TimeDependentHamiltonian(
        space=space, amps=np.array(amps), freqs=np.array(phase_freqs),
        mats=np.array(mats), max_frequency=max_freq,
    )


def h_jc(freqs: ModelFrequencies, space: TensorSpace) -> Operator:
    """Resonant Jaynes-Cummings interaction 2 hbar Omega_c (b^dag s- + b s+)."""
    if not freqs.at_cavity_resonance():
        raise ResonanceError(
            f"JC form requires omega_a = omega_c; got {freqs.omega_a} vs "
            f"{freqs.omega_c} (use h_interaction off resonance)"
        )
    _, sp, sm, _ = _qubit_matrices(space)
    b, bd, _ = _cavity_matrices(space)
    return Operator(space, 2.0 * HBAR * freqs.omega_rabi_c * (bd @ sm + b @ sp))


def h_djc(freqs: ModelFrequencies, space: TensorSpace) -> Operator:
    """Driven JC: h_jc + hbar Omega_l (e^{i phi} s- + e^{-i phi} s+)."""
    if not freqs.at_full_resonance():
        raise ResonanceError(
            "driven JC form requires omega_a = omega_c = omega_l "
            "(use h_interaction(driven=True) off resonance)"
        )
    _, sp, sm, _ = _qubit_matrices(space)
    phase = np.exp(1j * freqs.phi_l)
    drive = HBAR * freqs.omega_rabi_l * (phase * sm + sp / phase)
    return h_jc(freqs, space) + Operator(space, drive)


def tau_ops() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(tau_z, tau_plus, tau_minus) in the |+/-> = (|g> +/- |e>)/sqrt(2) frame.

    Taken verbatim: tau_z = sigma_x, tau_+/- = (-/+ sigma_z -/+ sigma_- +/-
    sigma_+)/2; the h_djc equality test certifies the combination.
    """
    sz, sp, sm, sx = ops.qubit_ops()
    tau_z = sx
    tau_p = (-sz - sm + sp) / 2.0
    tau_m = (-sz + sm - sp) / 2.0
    return tau_z, tau_p, tau_m


def h_tau_frame(
    freqs: ModelFrequencies, space: TensorSpace
) -> tuple[Operator, TimeDependentHamiltonian, Operator]:
    """Driven JC in the |+/-> basis: static form, its interaction picture
    w.r.t. hbar Omega_l tau_z, and the strong-driving effective Hamiltonian
    hbar Omega_c (b^dag + b) tau_z."""
    if freqs.phi_l != 0.0:
        raise ValueError("tau-frame construction is defined for phi_l = 0 only")
    tau_z, tau_p, tau_m = tau_ops()
    tz = ops.embed(tau_z, space, QUBIT).matrix
    tp = ops.embed(tau_p, space, QUBIT).matrix
    tm = ops.embed(tau_m, space, QUBIT).matrix
    b, bd, _ = _cavity_matrices(space)
    rc, rl = freqs.omega_rabi_c, freqs.omega_rabi_l

    static = Operator(
        space,
        HBAR * rc * (bd @ (tz - tp + tm) + b @ (tz + tp - tm)) + HBAR * rl * tz,
    )
    rotating = TimeDependentHamiltonian(
        space=space,
        amps=np.array([HBAR * rc, -HBAR * rc, HBAR * rc,
                       HBAR * rc, HBAR * rc, -HBAR * rc]),
        freqs=np.array([0.0, 2.0 * rl, -2.0 * rl, 0.0, 2.0 * rl, -2.0 * rl]),
        mats=np.array([bd @ tz, bd @ tp, bd @ tm, b @ tz, b @ tp, b @ tm]),
        max_frequency=max(2.0 * rl, rc),
    )
    effective = Operator(space, HBAR * rc * (bd + b) @ tz)
    return static, rotating, effective
