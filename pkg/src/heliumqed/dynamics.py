"""Time evolution: exact JC solutions, the displaced driven-JC propagator,
and the numerical propagator used to certify the approximation chain.

Time-independent Hamiltonians are evolved exactly through one Hermitian
eigendecomposition; time-dependent ones through fixed-step RK4 keyed to the
fastest phase (numba kernel with a numpy fallback, see _kernels).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import operators as ops
from . import states as st
from ._kernels import rk4_phased_propagate
from .constants import HBAR
from .hamiltonians import TimeDependentHamiltonian
from .operators import CAVITY, QUBIT, Operator, TensorSpace

NORM_TOL = 1e-6
STEPS_PER_FAST_PERIOD = 20


class AccuracyError(RuntimeError):
    """Propagation norm drift exceeded tolerance; reduce the step size."""


@dataclass
class RabiSpectrum:
    """Effective Rabi frequency for initial photon number m."""

    m: int
    omega_m: float

    @classmethod
    def of(cls, m: int, omega_rabi_c: float) -> "RabiSpectrum":
        omega = 2.0 * omega_rabi_c * math.sqrt(m + 1) if m >= 0 else 0.0
        return cls(m=m, omega_m=omega)


@dataclass
class EvolutionResult:
    times: np.ndarray
    states: list[st.QuantumState]
    observables: dict[str, np.ndarray] = field(default_factory=dict)


def _observables(space: TensorSpace, vecs: np.ndarray,
                 reference: st.QuantumState | None) -> dict[str, np.ndarray]:
    dims = tuple(d for _, d in space.factors)
    n_t = vecs.shape[0]
    obs: dict[str, np.ndarray] = {}
    obs["norm"] = np.linalg.norm(vecs, axis=1)
    probs = np.abs(vecs.reshape((n_t,) + dims)) ** 2
    if space.has(QUBIT):
        q = space.index_of(QUBIT)
        axes = tuple(j + 1 for j in range(len(dims)) if j != q)
        qpop = probs.sum(axis=axes)
        obs["excited_population"] = qpop[:, 1]
    if space.has(CAVITY):
        c = space.index_of(CAVITY)
        axes = tuple(j + 1 for j in range(len(dims)) if j != c)
        pn = probs.sum(axis=axes)
        m = np.arange(dims[c])
        obs["mean_n"] = pn @ m
        obs["parity"] = pn @ ((-1.0) ** m)
    if reference is not None:
        ref = reference.vector
        obs["fidelity"] = np.abs(vecs @ ref.conj()) ** 2
    return obs


def jc_exact(m: int, qubit: str, omega_rabi_c: float, t: float,
             dim: int) -> st.QuantumState:
    """Closed-form JC evolution of |m>|g> or |m>|e> at resonance."""
    if m < 0:
        raise ValueError("photon number must be >= 0")
    space = ops.qubit_cavity_space(dim)
    vec = np.zeros((2, dim), dtype=complex)
    if qubit == "g":
        omega = RabiSpectrum.of(m - 1, omega_rabi_c).omega_m
        vec[0, m] = math.cos(omega * t)
        if m >= 1:
            vec[1, m - 1] = -1j * math.sin(omega * t)
    elif qubit == "e":
        omega = RabiSpectrum.of(m, omega_rabi_c).omega_m
        vec[1, m] = math.cos(omega * t)
        if m + 1 >= dim:
            raise ValueError(f"m={m} needs Fock level {m + 1}; raise dim")
        vec[0, m + 1] = -1j * math.sin(omega * t)
    else:
        raise ValueError(f"qubit must be 'g' or 'e', got {qubit!r}")
    return st.pure_state(space, vec.reshape(-1))


def propagate(
    h: Operator | TimeDependentHamiltonian,
    initial: st.QuantumState,
    times: np.ndarray,
    reference: st.QuantumState | None = None,
) -> EvolutionResult:
    """Evolve a normalized pure state, sampling at `times`."""
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or np.any(np.diff(times) <= 0):
        raise ValueError("times must be strictly increasing")
    if abs(initial.norm() - 1.0) > 1e-8:
        raise ValueError("initial state must be normalized")
    if not initial.is_pure:
        raise ValueError("propagation implemented for pure states")
    psi0 = initial.vector

    if isinstance(h, Operator):
        if h.space != initial.space:
            raise ValueError("Hamiltonian and state live on different spaces")
        w, v = np.linalg.eigh(h.matrix / HBAR)
        coeff = v.conj().T @ psi0
        vecs = np.einsum("tk,dk->td", np.exp(-1j * np.outer(times, w)) * coeff, v)
    else:
        if h.space != initial.space:
            raise ValueError("Hamiltonian and state live on different spaces")
        if h.max_frequency <= 0:
            raise ValueError("time-dependent Hamiltonian needs max_frequency > 0")
        dt_max = (2.0 * math.pi / h.max_frequency) / STEPS_PER_FAST_PERIOD
        vecs = rk4_phased_propagate(
            h.mats / HBAR, h.amps, h.freqs, psi0, times, dt_max
        )
    norms = np.linalg.norm(vecs, axis=1)
    drift = np.max(np.abs(norms - 1.0))
    if drift > NORM_TOL:
        raise AccuracyError(
            f"norm drifted by {drift:.2e} (> {NORM_TOL}); use a smaller step "
            "(raise STEPS_PER_FAST_PERIOD) or shorter interval"
        )
    result_states = [st.pure_state(initial.space, vecs[i]) for i in range(len(times))]
    return EvolutionResult(
        times=times,
        states=result_states,
        observables=_observables(initial.space, vecs, reference),
    )


def djc_propagator(omega_rabi_c: float, omega_rabi_l: float, phi_l: float,
                   t: float, dim: int) -> Operator:
    """Driven-JC propagator D(-r) exp(-i t H_JC/hbar) D(r),
    r = e^{-i phi_l} Omega_l / (2 Omega_c)."""
    from . import hamiltonians

    if omega_rabi_c == 0:
        raise ValueError("omega_rabi_c must be nonzero")
    r = np.exp(-1j * phi_l) * omega_rabi_l / (2.0 * omega_rabi_c)
    if not ops.displacement_headroom_ok(r, dim):
        raise ValueError(
            f"displacement |r|={abs(r):.3g} exceeds headroom for dim={dim}"
        )
    space = ops.qubit_cavity_space(dim)
    freqs = hamiltonians.ModelFrequencies(
        omega_a=1.0, omega_c=1.0, omega_rabi_c=omega_rabi_c
    )
    hjc = hamiltonians.h_jc(freqs, space)
    u_jc = ops.expm(Operator(space, -1j * t * hjc.matrix / HBAR))
    d_plus = ops.embed(ops.displacement(r, dim).matrix, space, CAVITY)
    d_minus = ops.embed(ops.displacement(-r, dim).matrix, space, CAVITY)
    return d_minus @ u_jc @ d_plus


def strong_driving_check(omega_rabi_c: float, omega_rabi_l: float,
                         t_final: float, dim: int) -> float:
    """Infidelity between the rotating-frame driven-JC evolution and its
    strong-driving effective form, from |0,+>, compared in the lab frame."""
    from . import hamiltonians

    if omega_rabi_c == 0.0:
        return 0.0
    if omega_rabi_l / omega_rabi_c < 10.0:
        raise ValueError("strong driving requires Omega_l/Omega_c >= 10")
    space = ops.qubit_cavity_space(dim)
    freqs = hamiltonians.ModelFrequencies(
        omega_a=1.0, omega_c=1.0, omega_l=1.0,
        omega_rabi_c=omega_rabi_c, omega_rabi_l=omega_rabi_l,
    )
    _, rotating, effective = hamiltonians.h_tau_frame(freqs, space)
    initial = st.joint("+", st.fock(0, dim).vector, space)
    times = np.array([0.0, t_final])
    psi_rot = propagate(rotating, initial, times).states[-1].vector
    psi_eff = propagate(effective, initial, times).states[-1].vector
    # undo the frame rotation exp(-i Omega_l t tau_z) on both branches
    tau_z, _, _ = hamiltonians.tau_ops()
    tz = ops.embed(tau_z, space, QUBIT)
    undo = ops.expm(Operator(space, -1j * omega_rabi_l * t_final * tz.matrix))
    psi_rot = undo.matrix @ psi_rot
    psi_eff = undo.matrix @ psi_eff
    return float(1.0 - abs(np.vdot(psi_rot, psi_eff)) ** 2)


def ld_check(freqs, eta_values, t_final: float, n_cavity: int,
             n_vibration: int) -> list[float]:
    """Reduced-state infidelity of the full pre-Lamb-Dicke model against the
    reduced two-factor model, for each eta, from (|g>+|e>)/sqrt(2) x |0,0>."""
    from dataclasses import replace

    from . import hamiltonians

    space3 = ops.full_space(n_cavity, n_vibration)
    space2 = ops.qubit_cavity_space(n_cavity)
    vac_c = st.fock(0, n_cavity).vector
    initial2 = st.joint("+", vac_c, space2)
    vec3 = np.kron(initial2.vector, st.fock(0, n_vibration).vector)
    initial3 = st.pure_state(space3, vec3)
    times = np.array([0.0, t_final])
    psi_ref = propagate(
        hamiltonians.h_simplified(freqs, space2), initial2, times
    ).states[-1]
    out = []
    for eta in eta_values:
        f_eta = replace(freqs, eta_c=eta)
        full = hamiltonians.h_full_ld(f_eta, space3)
        final3 = propagate(full, initial3, times).states[-1]
        vib_tail = float(np.sum(
            np.abs(final3.vector.reshape(-1, n_vibration)[:, -2:]) ** 2
        ))
        if final3.tail_population > 1e-6 or vib_tail > 1e-6:
            raise AccuracyError(
                f"truncation tail too large (cavity {final3.tail_population:.2e}, "
                f"vibration {vib_tail:.2e})"
            )
        rho_qc = _reduce_vibration(final3)
        fid = float(np.real(
            psi_ref.vector.conj() @ rho_qc @ psi_ref.vector
        ))
        out.append(max(1.0 - fid, 0.0))
    return out


def _reduce_vibration(state3: st.QuantumState) -> np.ndarray:
    """Joint (qubit, cavity) density matrix after tracing out the vibration."""
    dims = tuple(d for _, d in state3.space.factors)
    d_qc = dims[0] * dims[1]
    block = state3.vector.reshape(d_qc, dims[2])
    return block @ block.conj().T
