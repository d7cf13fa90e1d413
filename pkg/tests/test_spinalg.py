import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from rotspin.spinalg import (
    MatrixVector3,
    PauliCoeff,
    jordan_mul,
    pauli_commutator,
    pauli_mul,
    pauli_trace_prod,
)

SIGMA = np.array([[[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]], dtype=complex)


def dense(a: PauliCoeff) -> np.ndarray:
    return a.c0[..., None, None] * np.eye(2) + np.einsum("...k,kij->...ij", a.cv, SIGMA)


def random_pauli(rng, shape=()):
    c0 = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    cv = rng.normal(size=shape + (3,)) + 1j * rng.normal(size=shape + (3,))
    return PauliCoeff(c0, cv)


coeffs = arrays(np.complex128, (4,), elements=st.complex_numbers(max_magnitude=10, allow_nan=False,
                                                                   allow_infinity=False))


def from_arr(a):
    return PauliCoeff(a[0], a[1:])


def test_product_matches_dense_matrices():
    rng = np.random.default_rng(0)
    a, b = random_pauli(rng, (50,)), random_pauli(rng, (50,))
    np.testing.assert_allclose(dense(pauli_mul(a, b)), dense(a) @ dense(b), atol=1e-12)
    np.testing.assert_allclose(dense(a @ b), dense(a) @ dense(b), atol=1e-12)


def test_trace_commutator_and_jordan_against_dense():
    rng = np.random.default_rng(1)
    a, b = random_pauli(rng, (20,)), random_pauli(rng, (20,))
    A, B = dense(a), dense(b)
    np.testing.assert_allclose(a.trace(), np.trace(A, axis1=-2, axis2=-1), atol=1e-12)
    np.testing.assert_allclose(dense(pauli_commutator(a, b)), A @ B - B @ A, atol=1e-12)
    np.testing.assert_allclose(dense(jordan_mul(a, b)), 0.5 * (A @ B + B @ A), atol=1e-12)
    np.testing.assert_allclose(pauli_trace_prod(a, b), np.trace(A @ B, axis1=-2, axis2=-1), atol=1e-12)


def test_dagger_and_hermitian_defect():
    rng = np.random.default_rng(2)
    a = random_pauli(rng, (5,))
    np.testing.assert_allclose(dense(a.dagger()), np.conj(np.swapaxes(dense(a), -1, -2)))
    h = PauliCoeff(rng.normal(size=5), rng.normal(size=(5, 3)))
    assert np.all(h.hermitian_defect() == 0)
    assert np.all(a.hermitian_defect() > 0)


def test_real_rejects_imaginary_parts():
    with pytest.raises(ValueError):
        PauliCoeff(1j, [0, 0, 0]).real(atol=1e-12)
    r = PauliCoeff(2.0 + 1e-15j, [1, 0, 0]).real(atol=1e-12)
    assert r.c0.imag == 0 and r.c0.real == 2.0


def test_sigma_algebra_identities():
    sx, sy, sz = (PauliCoeff.vector(e) for e in np.eye(3))
    np.testing.assert_allclose(dense(sx @ sy), dense(sz * 1j))
    np.testing.assert_allclose(dense(sx @ sx), np.eye(2))


@settings(max_examples=200, deadline=None)
@given(coeffs, coeffs, coeffs)
def test_associativity(a, b, c):
    a, b, c = from_arr(a), from_arr(b), from_arr(c)
    lhs = (a @ b) @ c
    rhs = a @ (b @ c)
    scale = 1.0 + np.abs(dense(lhs)).max()
    np.testing.assert_allclose(dense(lhs), dense(rhs), atol=1e-12 * scale)


@settings(max_examples=200, deadline=None)
@given(arrays(np.float64, (4,), elements=st.floats(-5, 5)), arrays(np.float64, (4,), elements=st.floats(-5, 5)))
def test_jordan_product_of_hermitian_is_hermitian(a, b):
    p = jordan_mul(from_arr(a.astype(complex)), from_arr(b.astype(complex)))
    assert p.hermitian_defect() < 1e-12


def test_matrix_vector_products_against_components():
    rng = np.random.default_rng(3)
    c0 = rng.normal(size=3) + 0j
    cv = rng.normal(size=(3, 3)) + 0j
    M = MatrixVector3(c0, cv)
    v = rng.normal(size=3)
    d = M.dot_real(v)
    ref = sum(M.component(i) * v[i] for i in range(3))
    np.testing.assert_allclose(dense(d), dense(ref))
    cr = M.cross_real(v)
    for k in range(3):
        i, j = (k + 1) % 3, (k + 2) % 3
        want = M.component(i) * v[j] - M.component(j) * v[i]
        np.testing.assert_allclose(dense(cr.component(k)), dense(want), atol=1e-12)
    np.testing.assert_allclose(dense(M.rcross_real(v).component(0)), dense(-cr.component(0)), atol=1e-12)


def test_symmetrized_and_exact_dot():
    rng = np.random.default_rng(4)
    M = MatrixVector3(rng.normal(size=3) + 0j, rng.normal(size=(3, 3)) + 0j)
    N = MatrixVector3(rng.normal(size=3) + 0j, rng.normal(size=(3, 3)) + 0j)
    exact = sum(dense(M.component(i)) @ dense(N.component(i)) for i in range(3))
    np.testing.assert_allclose(dense(M.mdot(N)), exact, atol=1e-12)
    sym = sum(0.5 * (dense(M.component(i)) @ dense(N.component(i))
                     + dense(N.component(i)) @ dense(M.component(i))) for i in range(3))
    np.testing.assert_allclose(dense(M.dot(N)), sym, atol=1e-12)


def test_sigma_vector_traces():
    S = MatrixVector3.sigma()
    np.testing.assert_allclose(S.sigma_trace([0, 0, 1]), [0, 0, 2])
    np.testing.assert_allclose(S.trace(), 0)
