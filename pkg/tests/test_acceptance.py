"""Acceptance criteria, each at its stated tolerance.

Every test records a PASS/FAIL line (printed in the terminal summary) and then
asserts. Criteria 9 and 10 are expected to fail; see the decisions ledger.
"""

import time

import numpy as np

from rotspin.berry import berry_curvature, curvature_fd_oracle
from rotspin.densities import (
    Integrand,
    b_coefficients,
    hall_decompose_2d,
    quad_density,
    sigma_perp_3d,
    sigma_sh,
    spin_current_3d_noneq,
)
from rotspin.densities.continuity import consistency_check, consistency_quadrature, continuity_residual
from rotspin.kinematics import PhasePoint, pfaffian, pfaffian_6x6_oracle
from rotspin.model import ParamSet, derived_fields, dispersion
from rotspin.repro import repro_rows
from rotspin.spinalg import PauliCoeff
from rotspin.transport import (
    bigC_residual,
    bigK_residual,
    chi0,
    chi0_linear_oracle,
    chi1_residual,
    solve_chi,
)
from rotspin.validation import closed_form_pairs, random_params, random_unit


def rel(a, b):
    a, b = np.atleast_1d(np.asarray(a, float)), np.atleast_1d(np.asarray(b, float))
    return float(np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1e-300))


def test_criterion_1_chi0_linear_solve(criterion):
    rng = np.random.default_rng(101)
    n = 10_000
    E = rng.uniform(0.5, 5.0, n)
    tau = rng.uniform(0.05, 5.0, n)
    calB = rng.normal(size=(n, 3)) * rng.uniform(0.0, 4.0, (n, 1))
    e = rng.normal(size=(n, 3))
    t0 = time.perf_counter()
    a = chi0(E, tau, calB, e)
    b = chi0_linear_oracle(E, tau, calB, e)
    elapsed = time.perf_counter() - t0
    err = float(np.max(np.linalg.norm(a - b, axis=-1) / np.linalg.norm(b, axis=-1)))
    ok = err <= 1e-12 and elapsed < 1.0
    criterion(1, ok, f"max relative error {err:.2e} (tol 1e-12) over {n} draws, {elapsed:.3f} s (limit 1 s)")
    assert ok


def test_criterion_2_chain_residuals(criterion):
    rng = np.random.default_rng(102)
    worst = {"C": 0.0, "K": 0.0, "chi1": 0.0}
    for i in range(1000):
        P = random_params(rng).replace(branch=1 if i % 2 else -1)
        p = rng.normal(size=3) * rng.uniform(0.1, 3.0)
        E = dispersion(p, P.m)
        fd = derived_fields(P, E, P.x, rng.normal(size=3))
        sol = solve_chi(p, fd, P)
        worst["C"] = max(worst["C"], bigC_residual(E, P.tau, fd.calB, sol.chi0, sol.C))
        worst["K"] = max(worst["K"], bigK_residual(E, P.m, P.hbar, P.tau, fd.calB, fd.e_mu, sol.K, P.branch))
        worst["chi1"] = max(worst["chi1"], chi1_residual(p, fd, P))
    ok = max(worst.values()) <= 1e-10
    criterion(2, ok, "max relative residuals " + ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
              + " (tol 1e-10) over 1000 instances")
    assert ok


def test_criterion_3_curvature(criterion):
    rng = np.random.default_rng(103)
    ratios, ident = [], 0.0
    for _ in range(200):
        m, hbar = rng.uniform(0.3, 3.0), rng.uniform(0.1, 2.0)
        p = rng.normal(size=3) * rng.uniform(0.2, 3.0)
        G = berry_curvature(p, m, hbar)
        h = 0.05 * max(np.linalg.norm(p), m)
        e1 = np.abs(curvature_fd_oracle(p, m, hbar, h).cv - G.cv).max()
        e2 = np.abs(curvature_fd_oracle(p, m, hbar, h / 2).cv - G.cv).max()
        ratios.append(e1 / e2)
        n = p / np.linalg.norm(p)
        want = PauliCoeff.vector(n) * (hbar / (2 * dispersion(p, m) ** 2))
        ident = max(ident, (G.dot_real(n) - want).max_abs() / want.max_abs())
    ratios = np.array(ratios)
    ok = np.all(np.abs(ratios - 4) <= 0.6) and ident <= 1e-12
    criterion(3, ok, f"Richardson ratio in [{ratios.min():.3f}, {ratios.max():.3f}] (4 +- 15%), "
              f"G.p identity {ident:.1e} (tol 1e-12)")
    assert ok


def test_criterion_4_pfaffian_hbar_squared(criterion):
    rng = np.random.default_rng(104)
    ratios, exact = [], 0.0
    for _ in range(100):
        P = random_params(rng, hbar=0.2).replace(B=rng.normal(size=3), Omega=0.2 * rng.uniform(0.2, 1) * random_unit(rng))
        P = P.replace(x=0.2 * random_unit(rng))
        xp = PhasePoint(P.x, rng.normal(size=3))
        n = random_unit(rng)
        for axis in (n, -n):
            res = []
            for hb in (0.2, 0.1):
                Q = P.replace(hbar=hb)
                res.append(abs(pfaffian(xp, Q, "full", "corrected").project(axis).real
                               - pfaffian_6x6_oracle(xp, Q, axis, "full", "corrected")))
            ratios.append(res[0] / res[1])
            exact = max(exact, abs(pfaffian(xp, P).project(axis).real - pfaffian_6x6_oracle(xp, P, axis)))
    ratios = np.array(ratios)
    ok = np.all(np.abs(ratios - 4) <= 0.6)
    criterion(4, ok, f"residual ratio under hbar -> hbar/2 in [{ratios.min():.4f}, {ratios.max():.4f}] "
              f"(4 +- 15%), 100 configs x 2 spin projections, full velocity and corrected energy; "
              f"simplified kinematics agree to {exact:.1e}")
    assert ok


def test_criterion_5_closed_forms_vs_quadrature(criterion):
    rng = np.random.default_rng(105)
    t0 = time.perf_counter()
    P2 = random_params(rng, planar=True)
    P3 = random_params(rng, along_z=True)
    gm2 = rng.normal(size=3) * [1, 1, 0]
    gm3 = rng.normal(size=3)
    worst0, worstT, names = 0.0, 0.0, []
    for label, closed, it, P, gm in closed_form_pairs(P2, P3, gm2, gm3, random_unit(rng)):
        if label.startswith("J_neq_3d_p"):
            closed = spin_current_3d_noneq(P, 2, gm, path="special")
        r0 = rel(quad_density(it, P, grad_mu=gm), closed)
        rT = rel(quad_density(it, P, T_smear=1e-4 * P.mu, grad_mu=gm), closed)
        worst0, worstT = max(worst0, r0), max(worstT, rT)
        names.append(label)
    elapsed = time.perf_counter() - t0
    ok = worst0 <= 1e-6 and worstT <= 1e-3
    criterion(5, ok, f"{len(names)} closed forms: T=0 worst {worst0:.1e} (tol 1e-6), "
              f"T=1e-4 mu worst {worstT:.1e} (tol 1e-3), {elapsed:.1f} s")
    assert ok


def test_criterion_6_limits(criterion):
    topo = sigma_sh(ParamSet(q=1.0, m=1.0, mu=1e3))
    r_topo = abs(topo / (-1 / (4 * np.pi)) - 1)
    kF = 1e-2
    P = ParamSet(q=1.0, m=1.0, hbar=1.0, mu=np.hypot(1.0, kF))
    n = quad_density(Integrand("density", None, "f0", 2), P)  # particle density by quadrature
    nonrel = -P.q * P.hbar * n / (4 * P.m**2)
    r_nr = abs(sigma_sh(P) / nonrel - 1)
    # the deviation is m/mu, exactly the bound here; allow round-off in evaluating the equality
    ok = r_topo <= 1e-3 + 8 * np.finfo(float).eps and r_nr <= kF**2
    criterion(6, ok, f"sigma_SH(mu/m=1e3) off -q/4pi by {r_topo:.6e} (tol 1e-3, exact deviation m/mu); "
              f"nonrelativistic form off by {r_nr:.1e} (expansion bound kF^2/m^2 = {kF**2:.0e})")
    assert ok


def test_criterion_7_field_independence(criterion):
    rng = np.random.default_rng(107)
    base2 = random_params(rng, planar=True)
    base3 = random_params(rng, along_z=True)
    wa = wb = 0.0
    for _ in range(1000):
        change = dict(tau=rng.uniform(0.05, 5.0), B=[0, 0, rng.uniform(-3, 3)], Omega=[0, 0, rng.uniform(-0.5, 0.5)])
        P = base2.replace(**change)
        h = hall_decompose_2d(P)
        target = P.q * P.m / (16 * np.pi) * (P.mu**2 - P.m**2) / P.mu**3
        wa = max(wa, rel((h.a1**2 + h.a2**2) / h.a2, target))
        Q = base3.replace(**change)
        b1, b2 = b_coefficients(Q)
        wb = max(wb, rel((b1**2 + b2**2) / b2, sigma_perp_3d(Q)))
    ok = wa <= 1e-12 and wb <= 1e-12
    criterion(7, ok, f"(a1^2+a2^2)/a2 worst {wa:.1e}, (b1^2+b2^2)/b2 worst {wb:.1e} (tol 1e-12), 1000 draws")
    assert ok


def test_criterion_8_consistency(criterion):
    rng = np.random.default_rng(108)
    worst = 0.0
    for _ in range(5):
        P2 = random_params(rng, planar=True)
        worst = max(worst, rel(consistency_quadrature(P2, 2), consistency_check(P2, 2)))
        P3 = random_params(rng)
        a = random_unit(rng)
        worst = max(worst, rel(consistency_quadrature(P3, 3, a), consistency_check(P3, 3, a)))
    ok = worst <= 1e-6
    criterion(8, ok, f"2D and 3D coefficients vs quadrature worst {worst:.1e} (tol 1e-6)")
    assert ok


def test_criterion_9_continuity(criterion):
    P = random_params(np.random.default_rng(109), planar=True)
    k = 256
    full = [continuity_residual(P, h=P.R / (k // 2)), continuity_residual(P, h=P.R / k)]
    eq = [continuity_residual(P, h=P.R / (k // 2), parts=("eq",)), continuity_residual(P, h=P.R / k, parts=("eq",))]
    ratio = full[0].residual / full[1].residual
    ok = full[1].residual <= 1e-4 and abs(ratio / 4 - 1) <= 0.15
    criterion(9, ok, f"full current residual {full[1].residual:.2e} at h=R/{k} (tol 1e-4), halving ratio "
              f"{ratio:.2f} (want 4); equilibrium part alone {eq[1].residual:.2e}, ratio "
              f"{eq[0].residual / eq[1].residual:.2f}")
    assert ok


def test_criterion_10_reproduction_report(criterion):
    rows = {r.quantity: r for r in repro_rows()}
    sig = [rows[q] for q in ("sigma_SH magnitude", "sigma_SH1", "sigma_SH magnitude + sigma_SH1")]
    sig_ok = all(round(r.computed_value, 3) == r.reference_value for r in sig)
    obr = rows["Omega B R term of the planar equilibrium current"]
    cen = rows["centrifugal term of the planar equilibrium current"]
    direct = rows["(mu - m)/mu from kF = 1e10 1/m with the free electron mass"]
    obr_ok = 0.1 <= obr.computed_value / 1e-6 <= 10
    cen_ok = 0.1 <= cen.computed_value / 1e-13 <= 10
    flagged = not direct.agreement and "not reproduced" in direct.convention_notes
    ok = sig_ok and obr_ok and cen_ok and flagged
    criterion(10, ok, "sigma rows " + "/".join(f"{r.computed_value:.3f}" for r in sig)
              + f" {'ok' if sig_ok else 'MISMATCH'}; Omega B R term {obr.computed_value:.2e} A/m "
              f"({'ok' if obr_ok else 'outside factor 10 of 1e-6'}); centrifugal {cen.computed_value:.2e} A/m "
              f"({'ok' if cen_ok else 'outside factor 10 of 1e-13'}); direct SI kF "
              f"{'flagged' if flagged else 'NOT flagged'}")
    assert ok
