import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from rotspin.berry import berry_connection, berry_curvature, curvature_fd_oracle, semiclassical_hamiltonian
from rotspin.model import ParamSet, dispersion
from rotspin.spinalg import PauliCoeff

momenta = arrays(np.float64, (3,), elements=st.floats(-3, 3)).filter(lambda p: np.linalg.norm(p) > 0.1)


@settings(max_examples=100, deadline=None)
@given(momenta, st.floats(0.3, 3), st.floats(0.1, 2))
def test_curvature_matches_covariant_derivative(p, m, hbar):
    G = berry_curvature(p, m, hbar)
    fd = curvature_fd_oracle(p, m, hbar)
    np.testing.assert_allclose(fd.cv, G.cv, atol=1e-7 * np.abs(G.cv).max())
    assert np.abs(fd.c0).max() < 1e-9 * np.abs(G.cv).max()


def test_richardson_ratio():
    p, m, hbar = np.array([0.7, -0.4, 1.1]), 1.2, 0.8
    G = berry_curvature(p, m, hbar)
    e1 = np.abs(curvature_fd_oracle(p, m, hbar, 0.1).cv - G.cv).max()
    e2 = np.abs(curvature_fd_oracle(p, m, hbar, 0.05).cv - G.cv).max()
    assert abs(e1 / e2 - 4) < 0.15 * 4


def test_traceless_hermitian_and_radial_identity():
    rng = np.random.default_rng(0)
    p = rng.normal(size=(200, 3))
    m, hbar = 1.3, 0.6
    for M in (berry_connection(p, m, hbar), berry_curvature(p, m, hbar)):
        assert np.abs(M.c0).max() == 0
        assert np.abs(M.cv.imag).max() < 1e-14
    E = dispersion(p, m)
    n = p / np.linalg.norm(p, axis=-1, keepdims=True)
    G = berry_curvature(p, m, hbar)
    for i in range(5):
        got = G[i].dot_real(n[i])
        want = PauliCoeff.vector(n[i]) * (hbar / (2 * E[i] ** 2))
        np.testing.assert_allclose(got.cv, want.cv, rtol=1e-12, atol=1e-16)


def test_connection_orthogonal_to_momentum():
    p = np.array([0.3, 0.5, -0.2])
    A = berry_connection(p, 1.0, 1.0)
    np.testing.assert_allclose(A.dot_real(p).cv, 0, atol=1e-16)


def test_curvature_scales_linearly_with_hbar():
    p = np.array([0.3, 0.5, -0.2])
    np.testing.assert_allclose(berry_curvature(p, 1.0, 0.5).cv * 2, berry_curvature(p, 1.0, 1.0).cv)


def test_hamiltonian_branch_and_field_free_limit():
    p = np.array([0.3, 0.5, -0.2])
    P = ParamSet(B=[0.1, 0.2, 0.3], Omega=[0.0, 0.1, 0.0])
    Hp = semiclassical_hamiltonian(p, P)
    Hm = semiclassical_hamiltonian(p, P.replace(branch=-1))
    E = dispersion(p, 1.0)
    np.testing.assert_allclose(Hp.c0, E)
    np.testing.assert_allclose(Hp.cv, -Hm.cv)
    H0 = semiclassical_hamiltonian(p, ParamSet())
    assert np.abs(H0.cv).max() == 0
