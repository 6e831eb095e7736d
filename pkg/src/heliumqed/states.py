"""Quantum states over tagged tensor spaces, and their analysis.

Coherent / cat / even-odd / thermal constructions, qubit measurement
collapse, fidelities, photon statistics, parity, and Wigner grids.

Wigner convention: on the (x, p) grid with beta = (x + i p)/sqrt(2),
W(x, p) = (1/pi) <D(beta) Pi D(-beta)>, so the vacuum gives W(0,0) = 1/pi
and the grid integrates to 1 over dx dp.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import operators as ops
from ._kernels import wigner_pure_grid
from .constants import HBAR, K_B
from .operators import CAVITY, QUBIT, Operator, TensorSpace

TAIL_LEVELS = 4
TAIL_TRUST_LIMIT = 1e-6


class StateError(ValueError):
    pass


class MeasurementError(ValueError):
    """Conditioning on an (essentially) zero-probability outcome."""


@dataclass
class QuantumState:
    """Pure state vector or density matrix over a tagged tensor space."""

    space: TensorSpace
    data: np.ndarray
    tail_population: float = 0.0

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=complex)
        d = self.space.dim
        if self.data.shape not in ((d,), (d, d)):
            raise StateError(
                f"state data shape {self.data.shape} does not match space dim {d}"
            )

    # -- structure ---------------------------------------------------------

    @property
    def is_pure(self) -> bool:
        return self.data.ndim == 1

    @property
    def vector(self) -> np.ndarray:
        if not self.is_pure:
            raise StateError("not a pure state")
        return self.data

    def density_matrix(self) -> np.ndarray:
        if self.is_pure:
            return np.outer(self.data, self.data.conj())
        return self.data

    def norm(self) -> float:
        if self.is_pure:
            return float(np.linalg.norm(self.data))
        return float(np.real(np.trace(self.data)))

    def normalized(self) -> "QuantumState":
        n = self.norm()
        if n <= 0:
            raise StateError("cannot normalize a zero state")
        return QuantumState(self.space, self.data / n, self.tail_population)

    def _dims(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.space.factors)

    def reduced(self, keep_label: str) -> "QuantumState":
        """Partial trace down to one factor (returns a density matrix)."""
        dims = self._dims()
        k = self.space.index_of(keep_label)
        n_fac = len(dims)
        d_keep = dims[k]
        rho = self.density_matrix().reshape(dims + dims)
        perm = [k] + [j for j in range(n_fac) if j != k]
        rho = np.transpose(rho, perm + [p + n_fac for p in perm])
        rest = self.space.dim // d_keep
        rho = rho.reshape(d_keep, rest, d_keep, rest)
        out = np.einsum("arbr->ab", rho)
        sub = TensorSpace(((keep_label, d_keep),))
        return QuantumState(sub, out)

    def expectation(self, op: Operator | np.ndarray) -> complex:
        m = op.matrix if isinstance(op, Operator) else np.asarray(op)
        if self.is_pure:
            return complex(self.data.conj() @ m @ self.data)
        return complex(np.trace(m @ self.data))

    # -- comparison --------------------------------------------------------

    def fidelity(self, other: "QuantumState") -> float:
        """|<psi|phi>|^2 for pure states; <psi|rho|psi> for pure-vs-mixed."""
        if self.is_pure and other.is_pure:
            return float(abs(np.vdot(self.data, other.data)) ** 2)
        if self.is_pure:
            return float(np.real(self.data.conj() @ other.data @ self.data))
        if other.is_pure:
            return other.fidelity(self)
        raise StateError("mixed-mixed fidelity not supported")


def _cavity_tail(vec: np.ndarray, space: TensorSpace) -> float:
    """Probability mass in the top TAIL_LEVELS Fock levels of the cavity."""
    dims = tuple(d for _, d in space.factors)
    k = space.index_of(CAVITY)
    probs = np.abs(vec.reshape(dims)) ** 2
    axes = tuple(j for j in range(len(dims)) if j != k)
    per_level = probs.sum(axis=axes) if axes else probs
    return float(per_level[-TAIL_LEVELS:].sum())


def pure_state(space: TensorSpace, vec: np.ndarray) -> QuantumState:
    vec = np.asarray(vec, dtype=complex)
    st = QuantumState(space, vec)
    if space.has(CAVITY):
        st.tail_population = _cavity_tail(vec, space)
    return st


def fock(m: int, dim: int) -> QuantumState:
    if not 0 <= m < dim:
        raise StateError(f"Fock index {m} outside truncation {dim}")
    v = np.zeros(dim, dtype=complex)
    v[m] = 1.0
    return pure_state(TensorSpace(((CAVITY, dim),)), v)


def qubit_state(which: str) -> np.ndarray:
    """Qubit amplitudes in the [|g>, |e>] ordering; accepts g, e, +, -."""
    table = {
        "g": np.array([1.0, 0.0]),
        "e": np.array([0.0, 1.0]),
        "+": np.array([1.0, 1.0]) / math.sqrt(2.0),
        "-": np.array([1.0, -1.0]) / math.sqrt(2.0),
    }
    if which not in table:
        raise StateError(f"unknown qubit state {which!r}")
    return table[which].astype(complex)


def joint(qubit: str, cavity_vec: np.ndarray, space: TensorSpace) -> QuantumState:
    """|qubit> x |cavity> in the (qubit, cavity) ordering of `space`."""
    vec = np.kron(qubit_state(qubit), np.asarray(cavity_vec, dtype=complex))
    return pure_state(space, vec)


def coherent(alpha: complex, dim: int) -> QuantumState:
    """Truncated coherent state, renormalized; tail mass recorded."""
    if not ops.displacement_headroom_ok(alpha, dim):
        raise StateError(
            f"|alpha|={abs(alpha):.3g} exceeds truncation headroom for dim={dim}"
        )
    if abs(alpha) == 0:
        return fock(0, dim)
    m = np.arange(dim)
    phases = (alpha / abs(alpha)) ** m
    amps = phases * np.exp(
        -0.5 * abs(alpha) ** 2
        + m * math.log(abs(alpha))
        - 0.5 * np.array([math.lgamma(k + 1) for k in m])
    )
    tail = float(1.0 - np.sum(np.abs(amps) ** 2))
    st = pure_state(TensorSpace(((CAVITY, dim),)), amps / np.linalg.norm(amps))
    st.tail_population = max(tail, st.tail_population)
    return st


def even_odd_coherent(alpha: complex, dim: int, parity: str) -> QuantumState:
    """Normalized |alpha> + |-alpha> (even) or |alpha> - |-alpha> (odd)."""
    plus = coherent(alpha, dim).vector
    minus = coherent(-alpha, dim).vector
    v = plus + minus if parity == "even" else plus - minus
    n = np.linalg.norm(v)
    if n < 1e-12:
        raise StateError(f"{parity} coherent state vanishes for alpha={alpha}")
    return pure_state(TensorSpace(((CAVITY, dim),)), v / n)


def thermal(omega_c: float, temperature: float, dim: int) -> QuantumState:
    """Truncated thermal density matrix, renormalized; geometric weights."""
    if temperature <= 0 or omega_c <= 0:
        raise StateError("omega_c and temperature must be positive")
    x = HBAR * omega_c / (K_B * temperature)
    m = np.arange(dim)
    weights = (1.0 - math.exp(-x)) * np.exp(-x * m)
    tail = float(1.0 - weights.sum())  # geometric remainder
    if tail > 1e-9:
        raise StateError(
            f"thermal tail {tail:.2e} beyond dim={dim} too heavy; raise dim"
        )
    rho = np.diag(weights / weights.sum()).astype(complex)
    st = QuantumState(TensorSpace(((CAVITY, dim),)), rho)
    st.tail_population = max(tail, float(weights[-TAIL_LEVELS:].sum()))
    return st


def _effective_evolution(omega_rabi_c: float, t: float, dim: int,
                         qubit: str) -> QuantumState:
    """Evolve |0>|qubit> under the strong-driving effective Hamiltonian."""
    from . import dynamics, hamiltonians

    space = ops.qubit_cavity_space(dim)
    freqs = hamiltonians.ModelFrequencies(
        omega_a=1.0, omega_c=1.0, omega_l=1.0, omega_rabi_c=omega_rabi_c
    )
    _, _, h_eff = hamiltonians.h_tau_frame(freqs, space)
    initial = joint(qubit, fock(0, dim).vector, space)
    result = dynamics.propagate(h_eff, initial, np.array([0.0, t]))
    return result.states[-1]


def prepare_coherent_dynamically(
    omega_rabi_c: float, t: float, dim: int
) -> QuantumState:
    """Cavity reduced state of |0,+> evolved under the effective Hamiltonian.

    Matches coherent(-i t Omega_c) up to truncation error.
    """
    alpha = -1j * t * omega_rabi_c
    if not ops.displacement_headroom_ok(alpha, dim):
        raise StateError(
            f"target |alpha|={abs(alpha):.3g} exceeds headroom for dim={dim}"
        )
    final = _effective_evolution(omega_rabi_c, t, dim, "+")
    return final.reduced(CAVITY)


def prepare_cat(omega_rabi_c: float, t: float, dim: int) -> QuantumState:
    """Joint state of |0,g> evolved under the effective Hamiltonian.

    Equals (|alpha,+> + |-alpha,->)/sqrt(2) with alpha = -i t Omega_c.
    """
    alpha = -1j * t * omega_rabi_c
    if not ops.displacement_headroom_ok(alpha, dim):
        raise StateError(
            f"target |alpha|={abs(alpha):.3g} exceeds headroom for dim={dim}"
        )
    return _effective_evolution(omega_rabi_c, t, dim, "g")


def cat_reference(alpha: complex, space: TensorSpace) -> QuantumState:
    """(|alpha>|+> + |-alpha>|->)/sqrt(2) built directly."""
    dim = space.dim_of(CAVITY)
    v = (
        np.kron(qubit_state("+"), coherent(alpha, dim).vector)
        + np.kron(qubit_state("-"), coherent(-alpha, dim).vector)
    ) / math.sqrt(2.0)
    return pure_state(space, v)


def measure_qubit(state: QuantumState, outcome: str) -> tuple[QuantumState, float]:
    """Project the qubit onto |g> or |e>; return collapsed cavity state and p."""
    if not state.is_pure:
        raise StateError("measurement collapse implemented for pure states")
    if outcome not in ("g", "e"):
        raise StateError(f"outcome must be 'g' or 'e', got {outcome!r}")
    if state.space.factors[0][0] != QUBIT:
        raise StateError("expected qubit as the leading tensor factor")
    rest = state.space.dim // 2
    block = state.vector.reshape(2, rest)[0 if outcome == "g" else 1]
    prob = float(np.sum(np.abs(block) ** 2))
    if prob < 1e-12:
        raise MeasurementError(
            f"outcome {outcome!r} has probability {prob:.2e}; collapse undefined"
        )
    sub_factors = state.space.factors[1:]
    sub = TensorSpace(sub_factors)
    return pure_state(sub, block / math.sqrt(prob)), prob


@dataclass
class StateAnalysis:
    photon_distribution: np.ndarray
    parity: float
    mean_n: float
    purity: float
    wigner: np.ndarray | None = None
    wigner_x: np.ndarray | None = None
    wigner_p: np.ndarray | None = None


def analyze(
    state: QuantumState,
    wigner_range: tuple[float, float] | None = None,
    wigner_resolution: int = 101,
) -> StateAnalysis:
    """Photon statistics of the cavity factor, plus an optional Wigner grid.

    `wigner_range` is (x_half_width, p_half_width) of a symmetric grid.
    """
    if not state.space.has(CAVITY):
        raise StateError("analysis requires a cavity factor")
    cavity = state if len(state.space.factors) == 1 else state.reduced(CAVITY)
    rho = cavity.density_matrix()
    dist = np.real(np.diag(rho)).copy()
    parity = float(np.sum(dist * (-1.0) ** np.arange(dist.size)))
    mean_n = float(np.sum(dist * np.arange(dist.size)))
    purity = float(np.real(np.trace(rho @ rho)))

    wig = wx = wp = None
    if wigner_range is not None:
        half_x, half_p = wigner_range
        wx = np.linspace(-half_x, half_x, wigner_resolution)
        wp = np.linspace(-half_p, half_p, wigner_resolution)
        wig = _wigner(cavity, wx, wp)
    return StateAnalysis(dist, parity, mean_n, purity, wig, wx, wp)


def _wigner(cavity: QuantumState, xs: np.ndarray, ps: np.ndarray) -> np.ndarray:
    if cavity.is_pure:
        return wigner_pure_grid(cavity.vector, xs, ps)
    # mixed: convex combination of pure-state Wigner grids
    w, v = np.linalg.eigh(cavity.density_matrix())
    total = np.zeros((ps.size, xs.size))
    for k in range(w.size):
        if w[k] > 1e-12:
            total += w[k] * wigner_pure_grid(np.ascontiguousarray(v[:, k]), xs, ps)
    return total
