import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rotspin.berry import semiclassical_hamiltonian
from rotspin.kinematics import (
    PhasePoint,
    RotationWarning,
    canonical_velocity,
    effective_force,
    force_weighted,
    pfaffian,
    pfaffian_6x6_oracle,
    pfaffian_skew,
    symplectic_matrix_6x6,
    vel_weighted,
)
from rotspin.model import ParamSet, dispersion


def pfaffian_expansion(A):
    """Pfaffian by recursive expansion along the first row."""
    n = A.shape[0]
    if n == 0:
        return 1.0
    total = 0.0
    for j in range(1, n):
        keep = [k for k in range(n) if k not in (0, j)]
        total += (-1) ** (j + 1) * A[0, j] * pfaffian_expansion(A[np.ix_(keep, keep)])
    return total


def config(seed, hbar=0.3, scale_x=1.0):
    rng = np.random.default_rng(seed)
    P = ParamSet(m=rng.uniform(0.5, 2), q=rng.uniform(-1, 1), hbar=hbar, mu=3.0,
                 B=rng.normal(size=3), Omega=0.05 * rng.normal(size=3), Efield=rng.normal(size=3),
                 x=scale_x * 0.5 * rng.normal(size=3))
    return P, PhasePoint(P.x, rng.normal(size=3)), rng


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_pfaffian_skew_against_expansion_and_det(n):
    rng = np.random.default_rng(n)
    X = rng.normal(size=(n, n))
    A = X - X.T
    pf = pfaffian_skew(A)
    assert np.isclose(pf, pfaffian_expansion(A), rtol=1e-10)
    assert np.isclose(pf * pf, np.linalg.det(A), rtol=1e-9)


def test_pfaffian_skew_rejects_non_antisymmetric():
    with pytest.raises(ValueError):
        pfaffian_skew(np.eye(4))
    assert pfaffian_skew(np.zeros((3, 3))) == 0.0


def test_simplified_pfaffian_matches_6x6_exactly():
    for seed in range(20):
        P, xp, rng = config(seed)
        n = rng.normal(size=3)
        n /= np.linalg.norm(n)
        for s, axis in itertools.product((1, -1), (n, -n)):
            Q = P.replace(branch=s)
            a = pfaffian(xp, Q).project(axis).real
            b = pfaffian_6x6_oracle(xp, Q, axis)
            assert abs(a - b) < 1e-12


@pytest.mark.parametrize("mode,energy", [("full", "bare"), ("simplified", "corrected"),
                                         ("full", "corrected"), ("gradient", "corrected")])
def test_pfaffian_residual_scales_as_hbar_squared(mode, energy):
    P, xp, rng = config(7, hbar=0.2)
    n = np.array([0.0, 0.6, 0.8])
    r = []
    for hb in (0.2, 0.1):
        Q = P.replace(hbar=hb)
        r.append(abs(pfaffian(xp, Q, mode, energy).project(n).real
                     - pfaffian_6x6_oracle(xp, Q, n, mode, energy)))
    assert r[0] > 0
    assert abs(r[0] / r[1] / 4 - 1) < 0.15


def test_gradient_velocity_matches_finite_difference_of_hamiltonian():
    for s in (1, -1):
        P, _, rng = config(11)
        P = P.replace(branch=s)
        p = rng.normal(size=(5, 3))
        nu = canonical_velocity(p, P, "gradient")
        h = 1e-5
        fd = np.stack([(semiclassical_hamiltonian(p + h * u, P).cv
                        - semiclassical_hamiltonian(p - h * u, P).cv) / (2 * h) for u in np.eye(3)], axis=-2)
        np.testing.assert_allclose(nu.cv, fd, atol=1e-9)
        np.testing.assert_allclose(nu.c0, p / dispersion(p, P.m)[:, None], atol=1e-15)


def test_full_velocity_shares_the_gradient_p_terms():
    # along the momentum the b (sigma.p) and sigma (p.b) pieces differ only in their prefactors
    P, _, rng = config(12)
    P = P.replace(B=np.zeros(3), Omega=np.zeros(3))
    p = rng.normal(size=(4, 3))
    for mode in ("full", "gradient"):
        nu = canonical_velocity(p, P, mode)
        np.testing.assert_allclose(nu.cv, 0, atol=1e-16)


def test_full_velocity_branch_sign():
    P, _, rng = config(13)
    p = rng.normal(size=3)
    a = canonical_velocity(p, P, "full")
    b = canonical_velocity(p, P.replace(branch=-1), "full")
    np.testing.assert_allclose(a.c0, b.c0)
    np.testing.assert_allclose(a.cv, -b.cv)


def test_unknown_mode_rejected():
    P, xp, _ = config(0)
    with pytest.raises(ValueError):
        canonical_velocity(xp.p, P, "exact")
    with pytest.raises(ValueError):
        pfaffian(xp, P, energy="dressed")


def test_field_free_reductions():
    P = ParamSet(m=1.2, Efield=[0.3, -0.1, 0.2])
    xp = PhasePoint([0.2, 0.1, 0.0], [[0.3, 0.4, 0.5], [0.0, -1.0, 0.2]])
    E = dispersion(xp.p, P.m)
    np.testing.assert_allclose(pfaffian(xp, P).c0, 1.0)
    np.testing.assert_allclose(vel_weighted(xp, P).real(atol=1e-12).c0, xp.p / E[:, None], atol=1e-12)
    vw = vel_weighted(xp, P)
    # with B = Omega = 0 the anomalous velocity s e x G remains
    assert np.abs(vw.cv).max() > 0
    np.testing.assert_allclose(force_weighted(xp, P).c0, np.broadcast_to(P.Efield, (2, 3)), atol=1e-14)
    Q = P.replace(Efield=np.zeros(3))
    np.testing.assert_allclose(vel_weighted(xp, Q).cv, 0, atol=1e-16)


def solve_weighted(xp, P, n):
    """Scalarized equations of motion M z = (-e, nu) times the Pfaffian."""
    M = symplectic_matrix_6x6(xp, P, n)
    E = float(dispersion(xp.p, P.m))
    z = np.linalg.solve(M, np.r_[-effective_force(P, E, xp.x), xp.p / E])
    return pfaffian_skew(M) * z


def test_weighted_velocities_match_6x6_equations_of_motion():
    for seed in range(10):
        P, xp, rng = config(seed, scale_x=0.0)
        n = rng.normal(size=3)
        n /= np.linalg.norm(n)
        for s in (1, -1):
            Q = P.replace(branch=s)
            z = solve_weighted(xp, Q, n)
            np.testing.assert_allclose(vel_weighted(xp, Q).project(n).real, z[:3], atol=1e-12)
            np.testing.assert_allclose(force_weighted(xp, Q).project(n).real, z[3:], atol=1e-12)


def test_weighted_velocities_rotation_remainder_is_second_order():
    P, xp, rng = config(3)
    n = np.array([0.6, 0.0, 0.8])
    errs = []
    for lam in (1.0, 0.5):
        Q = P.replace(x=lam * P.x)
        xq = PhasePoint(Q.x, xp.p)
        z = solve_weighted(xq, Q, n)
        errs.append(np.abs(vel_weighted(xq, Q).project(n).real - z[:3]).max())
    assert abs(errs[0] / errs[1] / 4 - 1) < 0.05


@settings(max_examples=50, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3), st.sampled_from([1, -1]))
def test_pfaffian_is_hermitian(px, py, pz, s):
    P, xp, _ = config(5)
    P = P.replace(branch=s)
    xp = PhasePoint(xp.x, [px, py, pz])
    for mode in ("simplified", "full", "gradient"):
        assert pfaffian(xp, P, mode, "corrected").hermitian_defect() < 1e-12
        assert vel_weighted(xp, P, mode).hermitian_defect().max() < 1e-12


def test_rotation_warning():
    P = ParamSet(Omega=[0, 0, 1.0])
    with pytest.warns(RotationWarning):
        PhasePoint([1.0, 0, 0], [0.1, 0, 0]).check_rotation(P.Omega)
