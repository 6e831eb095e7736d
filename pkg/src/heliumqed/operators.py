"""Dense complex operator algebra over tagged tensor-product spaces.

Conventions:
  * tensor factors are ordered (qubit, cavity[, vibration]), qubit leftmost
    and slowest-varying in the Kronecker product;
  * qubit basis ordering is [|g>, |e>], so sigma_z = diag(-1, +1).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

HERMITICITY_TOL = 1e-10

QUBIT = "qubit"
CAVITY = "cavity"
VIBRATION = "vibration"


class OperatorError(ValueError):
    pass


class TruncationWarning(UserWarning):
    """Raised when a displacement amplitude is too large for the Fock cutoff."""


@dataclass(frozen=True)
class TensorSpace:
    """Ordered list of labeled tensor factors, e.g. ((qubit,2),(cavity,32))."""

    factors: tuple[tuple[str, int], ...]

    def __post_init__(self):
        labels = [lab for lab, _ in self.factors]
        if len(set(labels)) != len(labels):
            raise OperatorError(f"duplicate factor labels: {labels}")
        for lab, d in self.factors:
            if d < 1:
                raise OperatorError(f"factor {lab!r} has dimension {d} < 1")

    @property
    def dim(self) -> int:
        n = 1
        for _, d in self.factors:
            n *= d
        return n

    def dim_of(self, label: str) -> int:
        for lab, d in self.factors:
            if lab == label:
                return d
        raise OperatorError(f"no factor labeled {label!r} in {self.factors}")

    def index_of(self, label: str) -> int:
        for i, (lab, _) in enumerate(self.factors):
            if lab == label:
                return i
        raise OperatorError(f"no factor labeled {label!r} in {self.factors}")

    def has(self, label: str) -> bool:
        return any(lab == label for lab, _ in self.factors)


def qubit_cavity_space(n_cavity: int) -> TensorSpace:
    return TensorSpace(((QUBIT, 2), (CAVITY, n_cavity)))


def full_space(n_cavity: int, n_vibration: int) -> TensorSpace:
    return TensorSpace(((QUBIT, 2), (CAVITY, n_cavity), (VIBRATION, n_vibration)))


@dataclass
class Operator:
    """Dense complex square matrix tagged with its tensor space."""

    space: TensorSpace
    matrix: np.ndarray
    trusted: bool = True

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        if self.matrix.shape != (self.space.dim, self.space.dim):
            raise OperatorError(
                f"matrix shape {self.matrix.shape} does not match space dim {self.space.dim}"
            )

    def is_hermitian(self, tol: float = HERMITICITY_TOL) -> bool:
        return np.max(np.abs(self.matrix - self.matrix.conj().T)) <= tol

    def is_unitary(self, tol: float = HERMITICITY_TOL) -> bool:
        d = self.space.dim
        return np.max(np.abs(self.matrix @ self.matrix.conj().T - np.eye(d))) <= tol

    def dagger(self) -> "Operator":
        return Operator(self.space, self.matrix.conj().T, trusted=self.trusted)

    def __matmul__(self, other: "Operator") -> "Operator":
        if other.space != self.space:
            raise OperatorError("operator product across different spaces")
        return Operator(self.space, self.matrix @ other.matrix,
                        trusted=self.trusted and other.trusted)

    def __add__(self, other: "Operator") -> "Operator":
        if other.space != self.space:
            raise OperatorError("operator sum across different spaces")
        return Operator(self.space, self.matrix + other.matrix,
                        trusted=self.trusted and other.trusted)

    def __mul__(self, scalar) -> "Operator":
        return Operator(self.space, scalar * self.matrix, trusted=self.trusted)

    __rmul__ = __mul__


def fock_ops(dim: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Truncated (annihilate, create, number) matrices on a dim-level Fock space."""
    if dim < 2:
        raise OperatorError(f"Fock dimension must be >= 2, got {dim}")
    annihilate = np.zeros((dim, dim), dtype=complex)
    m = np.arange(1, dim)
    annihilate[m - 1, m] = np.sqrt(m)
    create = annihilate.conj().T
    number = np.diag(np.arange(dim, dtype=float)).astype(complex)
    return annihilate, create, number


def qubit_ops() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(sigma_z, sigma_plus, sigma_minus, sigma_x) in the [|g>,|e>] ordering."""
    sigma_z = np.array([[-1, 0], [0, 1]], dtype=complex)
    sigma_plus = np.array([[0, 0], [1, 0]], dtype=complex)   # |e><g|
    sigma_minus = np.array([[0, 1], [0, 0]], dtype=complex)  # |g><e|
    sigma_x = sigma_plus + sigma_minus
    return sigma_z, sigma_plus, sigma_minus, sigma_x


def embed(op_matrix: np.ndarray, space: TensorSpace, label: str) -> Operator:
    """Kronecker-embed a single-factor matrix into the full space."""
    op_matrix = np.asarray(op_matrix, dtype=complex)
    d_target = space.dim_of(label)
    if op_matrix.shape != (d_target, d_target):
        raise OperatorError(
            f"operator of shape {op_matrix.shape} cannot act on factor "
            f"{label!r} of dimension {d_target}"
        )
    out = np.array([[1.0 + 0j]])
    for lab, d in space.factors:
        out = np.kron(out, op_matrix if lab == label else np.eye(d))
    return Operator(space, out)


def identity(space: TensorSpace) -> Operator:
    return Operator(space, np.eye(space.dim, dtype=complex))


def expm(op: Operator, hermitian: bool = False) -> Operator:
    """Matrix exponential.

    Hermitian matrices go through an eigendecomposition; the general case
    uses scaling-and-squaring (scipy's Pade implementation).
    """
    m = op.matrix
    if not np.all(np.isfinite(m)):
        raise OperatorError("non-finite entries in expm input")
    if hermitian:
        if not op.is_hermitian():
            raise OperatorError("matrix flagged Hermitian is not Hermitian")
        w, v = np.linalg.eigh(m)
        out = (v * np.exp(w)) @ v.conj().T
    else:
        out = scipy.linalg.expm(m)
    return Operator(op.space, out, trusted=op.trusted)


def displacement_headroom_ok(r: complex, dim: int) -> bool:
    # coherent-tail guard, not physics: |r|^2 + 6|r| + 10 must fit in dim;
    # zero displacement is the identity and always exact
    a = abs(r)
    return a == 0.0 or a * a + 6.0 * a + 10.0 <= dim


def displacement(r: complex, dim: int) -> Operator:
    """Cavity displacement D(r) = exp(r b^dag - r^* b) on a dim-level Fock space."""
    annihilate, create, _ = fock_ops(dim)
    space = TensorSpace(((CAVITY, dim),))
    op = Operator(space, r * create - np.conj(r) * annihilate)
    result = expm(op)
    if not displacement_headroom_ok(r, dim):
        warnings.warn(
            f"displacement amplitude |r|={abs(r):.3g} exceeds truncation "
            f"headroom for dim={dim}; result flagged untrusted",
            TruncationWarning,
        )
        result.trusted = False
    return result
