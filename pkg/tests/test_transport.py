import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from rotspin.kinematics import PhasePoint
from rotspin.model import ParamSet, derived_fields, dispersion
from rotspin.transport import (
    SurfaceDelta,
    bigC_residual,
    bigK_residual,
    chi0,
    chi0_linear_oracle,
    chi0_residual,
    chi1_residual,
    df0_dE,
    distribution_point,
    f0,
    f1,
    f1_from_chi,
    solve_chi,
)
from rotspin.validation import check_chi0, random_params

vec = arrays(np.float64, (3,), elements=st.floats(-3, 3))


@settings(max_examples=200, deadline=None)
@given(st.floats(0.5, 5), st.floats(0.05, 5), vec, vec)
def test_chi0_matches_linear_solve(E, tau, calB, e):
    a = chi0(E, tau, calB, e)
    b = chi0_linear_oracle(E, tau, calB, e)
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12 * (1 + np.abs(b).max()))
    assert chi0_residual(E, tau, calB, e, a) < 1e-12


def test_chi0_without_fields_is_drude():
    e = np.array([1.0, -2.0, 0.5])
    np.testing.assert_allclose(chi0(2.0, 0.5, np.zeros(3), e), 0.25 * e)


def test_chi0_negative_control_detects_corrupted_sign():
    def corrupted(E, tau, calB, e):
        return chi0(E, tau, -np.asarray(calB), e)

    assert check_chi0(n=1000).passed
    bad = check_chi0(n=1000, chi0_fn=corrupted)
    assert not bad.passed
    assert bad.value > 1e-3


def test_chain_residuals_both_branches():
    rng = np.random.default_rng(0)
    for _ in range(50):
        for s in (1, -1):
            P = random_params(rng).replace(branch=s)
            p = rng.normal(size=3)
            E = dispersion(p, P.m)
            fd = derived_fields(P, E, P.x, rng.normal(size=3))
            sol = solve_chi(p, fd, P)
            assert bigC_residual(E, P.tau, fd.calB, sol.chi0, sol.C) < 1e-12
            assert bigK_residual(E, P.m, P.hbar, P.tau, fd.calB, fd.e_mu, sol.K, s) < 1e-12
            assert chi1_residual(p, fd, P) < 1e-12


def test_printed_chi1_equation_leaves_finite_residual():
    rng = np.random.default_rng(1)
    P = random_params(rng)
    p = rng.normal(size=3)
    fd = derived_fields(P, dispersion(p, P.m), P.x, None)
    assert chi1_residual(p, fd, P, energy_factor=False) > 1e-2


def test_chi_is_hermitian_and_flips_with_branch():
    rng = np.random.default_rng(2)
    P = random_params(rng)
    p = rng.normal(size=3)
    fd = derived_fields(P, dispersion(p, P.m), P.x, None)
    a = solve_chi(p, fd, P)
    b = solve_chi(p, fd, P.replace(branch=-1))
    np.testing.assert_allclose(a.chi0, b.chi0)
    np.testing.assert_allclose(a.chi1.cv, -b.chi1.cv, atol=1e-15)
    assert a.chi1.hermitian_defect().max() < 1e-14


def test_chi0_and_C_depend_only_on_energy():
    rng = np.random.default_rng(3)
    P = random_params(rng)
    p = rng.normal(size=3)
    R, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    fd = derived_fields(P, dispersion(p, P.m), P.x, None)
    a = solve_chi(p, fd, P)
    b = solve_chi(R @ p, fd, P)
    np.testing.assert_allclose(a.chi0, b.chi0)
    np.testing.assert_allclose(a.C, b.C)


@pytest.mark.parametrize("s", [1, -1])
def test_display_form_equals_chi_chain(s):
    rng = np.random.default_rng(4)
    for _ in range(20):
        P = random_params(rng).replace(branch=s)
        p = rng.normal(size=(3, 3))
        gm = rng.normal(size=3)
        xp = PhasePoint(P.x, p)
        fd = derived_fields(P, dispersion(p, P.m), P.x, gm)
        a = f1(xp, P, gm, dmu_dt=0.3)
        b = f1_from_chi(xp, P, solve_chi(p, fd, P), dmu_dt=0.3)
        np.testing.assert_allclose(a.c0, b.c0, atol=1e-13)
        np.testing.assert_allclose(a.cv, b.cv, atol=1e-13)


def test_f1_is_linear_in_the_drive():
    rng = np.random.default_rng(5)
    P = random_params(rng).replace(Efield=np.zeros(3), x=np.zeros(3))
    xp = PhasePoint(P.x, rng.normal(size=(4, 3)))
    g1, g2 = rng.normal(size=(2, 3))
    total = f1(xp, P, g1 + g2)
    parts = f1(xp, P, g1) + f1(xp, P, g2)
    np.testing.assert_allclose(total.cv, parts.cv, atol=1e-14)
    np.testing.assert_allclose(total.c0, parts.c0, atol=1e-14)
    assert f1(xp, P, np.zeros(3)).max_abs() == 0


def test_fermi_dirac():
    E = np.linspace(0.5, 3.5, 7)
    np.testing.assert_allclose(f0(E, 2.0, 0.1), 1 / (np.exp((E - 2.0) / 0.1) + 1))
    np.testing.assert_allclose(f0(E, 2.0, 0.0), np.where(E < 2, 1.0, np.where(E > 2, 0.0, 0.5)))
    assert np.all(f0(E, 2.0, 0.0, branch=-1) == 0)
    h = 1e-6
    np.testing.assert_allclose(df0_dE(E, 2.0, 0.3), (f0(E + h, 2.0, 0.3) - f0(E - h, 2.0, 0.3)) / (2 * h),
                               rtol=1e-6)
    d = df0_dE(E, 2.0, 0.0)
    assert isinstance(d, SurfaceDelta) and d.sign == -1 and d.mu == 2.0
    assert np.all(np.isfinite(f0(np.array([0.0, 1e4]), 1.0, 1e-6)))


def test_distribution_point():
    P = ParamSet(mu=2.0, B=[0, 0, 0.5], Efield=[0.1, 0, 0])
    dp = distribution_point(PhasePoint(P.x, [0.3, 0.2, 0.1]), P)
    assert dp.f0 == 1.0
    assert isinstance(dp.df0_dE, SurfaceDelta)
    assert dp.f1.hermitian_defect() < 1e-14
