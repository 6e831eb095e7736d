import numpy as np
import pytest
from hypothesis import given, settings, strategies as hst

from heliumqed import operators as ops
from heliumqed.operators import CAVITY, QUBIT, Operator, TensorSpace


def test_fock_dim2_annihilate():
    a, ad, n = ops.fock_ops(2)
    expected = np.zeros((2, 2))
    expected[0, 1] = 1.0
    assert np.array_equal(a, expected)


def test_fock_commutator_truncation_artifact():
    dim = 8
    a, ad, n = ops.fock_ops(dim)
    comm = ad @ a - a @ ad
    # oracle: direct matrix computation of [create, annihilate]
    expected = -np.eye(dim)
    expected[-1, -1] = dim - 1
    assert np.allclose(comm, expected, atol=1e-14)


def test_number_is_create_annihilate():
    a, ad, n = ops.fock_ops(6)
    # sqrt(k)**2 rounds back to within one ulp of k
    assert np.allclose(n, ad @ a, atol=1e-13)
    assert np.array_equal(np.diag(n).real, np.arange(6))


def test_fock_dim_too_small():
    with pytest.raises(ops.OperatorError):
        ops.fock_ops(1)


def test_sigma_z_on_ground():
    sz, sp, sm, sx = ops.qubit_ops()
    g = np.array([1.0, 0.0])
    assert np.allclose(sz @ g, -g)


def test_qubit_algebra():
    sz, sp, sm, sx = ops.qubit_ops()
    eye = np.eye(2)
    assert np.allclose(sp @ sm + sm @ sp, eye)
    assert np.allclose(sx @ sx, eye)
    assert np.allclose(sz @ sp - sp @ sz, 2 * sp)
    assert np.allclose(sz @ sm - sm @ sz, -2 * sm)


def test_embed_disjoint_factors_commute():
    space = ops.qubit_cavity_space(5)
    sz = ops.embed(ops.qubit_ops()[0], space, QUBIT)
    num = ops.embed(ops.fock_ops(5)[2], space, CAVITY)
    assert np.allclose((sz @ num).matrix, (num @ sz).matrix)


def test_embed_identity():
    space = ops.qubit_cavity_space(4)
    assert np.allclose(ops.embed(np.eye(4), space, CAVITY).matrix, np.eye(8))


def test_embed_trace_identity():
    rng = np.random.default_rng(7)
    space = ops.full_space(4, 3)
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    emb = ops.embed(m, space, CAVITY)
    assert np.isclose(np.trace(emb.matrix), np.trace(m) * 2 * 3)


def test_embed_homomorphism():
    rng = np.random.default_rng(11)
    space = ops.full_space(3, 4)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    lhs = ops.embed(a @ b, space, CAVITY).matrix
    rhs = (ops.embed(a, space, CAVITY) @ ops.embed(b, space, CAVITY)).matrix
    assert np.allclose(lhs, rhs, atol=1e-12)


def test_embed_bad_label_and_dim():
    space = ops.qubit_cavity_space(4)
    with pytest.raises(ops.OperatorError):
        ops.embed(np.eye(3), space, CAVITY)
    with pytest.raises(ops.OperatorError):
        ops.embed(np.eye(2), space, "nope")


def test_expm_zero():
    space = TensorSpace(((CAVITY, 5),))
    z = Operator(space, np.zeros((5, 5)))
    assert np.allclose(ops.expm(z).matrix, np.eye(5))


def test_expm_pauli_rotation():
    # analytic 2x2 oracle: exp(i theta sx) = cos(theta) I + i sin(theta) sx
    sx = ops.qubit_ops()[3]
    space = TensorSpace(((QUBIT, 2),))
    theta = 0.731
    got = ops.expm(Operator(space, 1j * theta * sx)).matrix
    want = np.cos(theta) * np.eye(2) + 1j * np.sin(theta) * sx
    assert np.allclose(got, want, atol=1e-14)


def test_expm_unitarity_random_hermitian():
    rng = np.random.default_rng(3)
    m = rng.normal(size=(32, 32)) + 1j * rng.normal(size=(32, 32))
    h = (m + m.conj().T) / 2
    space = TensorSpace((("x", 32),))
    u = ops.expm(Operator(space, -1j * h), hermitian=False).matrix
    assert np.max(np.abs(u @ u.conj().T - np.eye(32))) < 1e-9
    # Hermitian eigendecomposition path agrees
    u2 = (
        ops.expm(Operator(space, 1j * h), hermitian=False).matrix
    )
    assert np.max(np.abs(u @ u2 - np.eye(32))) < 1e-9


def test_expm_conjugation_symmetry():
    rng = np.random.default_rng(5)
    m = rng.normal(size=(12, 12)) + 1j * rng.normal(size=(12, 12))
    space = TensorSpace((("x", 12),))
    lhs = ops.expm(Operator(space, m)).matrix.conj().T
    rhs = ops.expm(Operator(space, m.conj().T)).matrix
    assert np.allclose(lhs, rhs, atol=1e-10)


def test_expm_rejects_nonfinite():
    space = TensorSpace((("x", 2),))
    bad = Operator(space, np.array([[np.nan, 0], [0, 0]]))
    with pytest.raises(ops.OperatorError):
        ops.expm(bad)


def test_displacement_zero_is_identity():
    assert np.allclose(ops.displacement(0.0, 8).matrix, np.eye(8))


def test_displacement_shifts_annihilator():
    # D^dag(r) b D(r) = b + r on a low-Fock block; the block needs a
    # Poisson-tail margin beyond 4|r| (about 14 levels at |r|=1)
    r, dim = 1.0, 32
    d = ops.displacement(r, dim).matrix
    b = ops.fock_ops(dim)[0]
    got = d.conj().T @ b @ d
    want = b + r * np.eye(dim)
    cut = dim - int(np.ceil(4 * abs(r))) - 16
    assert np.max(np.abs(got - want)[:cut, :cut]) < 1e-6


def test_displacement_poisson_statistics():
    r, dim = 1.0, 32
    col0 = ops.displacement(r, dim).matrix[:, 0]
    m = np.arange(dim)
    import math

    fact = np.array([math.factorial(k) for k in m], dtype=float)
    poisson = np.exp(-abs(r) ** 2) * abs(r) ** (2 * m) / fact
    assert np.max(np.abs(np.abs(col0) ** 2 - poisson)) < 1e-8


def test_displacement_inverse_relations():
    r = 0.8 - 0.3j
    dim = 32
    d = ops.displacement(r, dim).matrix
    d_minus = ops.displacement(-r, dim).matrix
    assert np.max(np.abs(d_minus - d.conj().T)[:16, :16]) < 1e-10
    assert np.max(np.abs((d @ d_minus) - np.eye(dim))[:16, :16]) < 1e-10


def test_displacement_headroom_warning():
    with pytest.warns(ops.TruncationWarning):
        result = ops.displacement(3.0, 16)
    assert not result.trusted


def test_tensorspace_validation():
    with pytest.raises(ops.OperatorError):
        TensorSpace(((QUBIT, 2), (QUBIT, 3)))
    with pytest.raises(ops.OperatorError):
        TensorSpace(((CAVITY, 0),))


def test_operator_shape_mismatch():
    with pytest.raises(ops.OperatorError):
        Operator(ops.qubit_cavity_space(4), np.eye(4))


@settings(max_examples=25, deadline=None)
@given(hst.integers(min_value=2, max_value=20))
def test_fock_number_spectrum(dim):
    _, _, n = ops.fock_ops(dim)
    assert np.allclose(np.diag(n).real, np.arange(dim))
