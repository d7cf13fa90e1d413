"""Oracle checks shared by the command-line ``validate`` command and the test suite.

Each check draws random configurations from a seeded generator, compares a
closed form with an independent route, and returns a ``CheckResult``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .berry import berry_curvature, curvature_fd_oracle
from .densities import (
    Integrand,
    b_coefficients,
    hall_decompose_2d,
    quad_density,
    sigma_perp_3d,
    sigma_sh1,
    spin_current_2d_eq,
    spin_current_2d_noneq,
    spin_current_3d_eq,
    spin_current_3d_noneq,
    spin_density_2d,
    spin_density_3d,
)
from .densities.continuity import consistency_check, consistency_quadrature, continuity_residual
from .kinematics import PhasePoint, pfaffian, pfaffian_6x6_oracle
from .model import ParamSet, derived_fields, dispersion
from .spinalg import PauliCoeff
from .transport import (
    bigC_residual,
    bigK_residual,
    chi0,
    chi0_linear_oracle,
    chi1_residual,
    solve_chi,
)

__all__ = [
    "CheckResult",
    "random_params",
    "random_unit",
    "check_chi0",
    "check_chi_residuals",
    "check_curvature",
    "check_pfaffian",
    "check_closed_forms",
    "check_consistency",
    "check_field_independence",
    "check_continuity",
    "run_checks",
]


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.check_id}: value={self.value:.3e} tol={self.tolerance:.1e}"
                f" ({self.seconds:.2f}s) {self.detail}")


def random_unit(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def random_params(rng: np.random.Generator, *, planar: bool = False, along_z: bool = False,
                  hbar: float | None = None) -> ParamSet:
    """A random configuration with B parallel to Omega and a filled band.

    ``planar`` puts B and Omega along z and E, x in the plane; ``along_z``
    only aligns B and Omega with z.
    """
    m = rng.uniform(0.5, 2.0)
    mu = m * rng.uniform(1.1, 4.0)
    n = np.array([0.0, 0.0, 1.0]) if (planar or along_z) else random_unit(rng)
    B = rng.uniform(-1.0, 1.0) * n
    Omega = rng.uniform(-0.05, 0.05) * n
    E = rng.normal(size=3)
    x = rng.normal(size=3)
    if planar:
        E[2] = 0.0
        x[2] = 0.0
    return ParamSet(m=m, q=rng.uniform(0.3, 1.5) * rng.choice([-1, 1]),
                    hbar=rng.uniform(0.2, 1.5) if hbar is None else hbar,
                    mu=mu, tau=rng.uniform(0.2, 3.0), B=B, Omega=Omega, Efield=E,
                    x=x, R=rng.uniform(0.2, 1.5))


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        return CheckResult(**{**res.__dict__, "seconds": time.perf_counter() - t0})
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_timed
def check_chi0(n: int = 10_000, seed: int = 0, chi0_fn: Callable = chi0) -> CheckResult:
    """chi0 closed form against the 3x3 linear solve, vectorized over ``n`` draws."""
    rng = np.random.default_rng(seed)
    E = rng.uniform(0.5, 5.0, n)
    tau = rng.uniform(0.1, 5.0)
    calB = rng.normal(size=(n, 3)) * rng.uniform(0.0, 3.0, (n, 1))
    e = rng.normal(size=(n, 3))
    a = chi0_fn(E, tau, calB, e)
    b = chi0_linear_oracle(E, tau, calB, e)
    rel = float(np.max(np.linalg.norm(a - b, axis=-1) / np.linalg.norm(b, axis=-1)))
    return CheckResult("chi0_vs_linear_solve", rel <= 1e-12, rel, 1e-12, f"n={n}")


@_timed
def check_chi_residuals(n: int = 1000, seed: int = 1) -> CheckResult:
    """Defining-equation residuals of C, K and chi1."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        P = random_params(rng).replace(branch=int(rng.choice([-1, 1])))
        p = rng.normal(size=3) * rng.uniform(0.1, 3.0)
        E = dispersion(p, P.m)
        fd = derived_fields(P, E, P.x, rng.normal(size=3))
        sol = solve_chi(p, fd, P)
        worst = max(worst,
                    bigC_residual(E, P.tau, fd.calB, sol.chi0, sol.C),
                    bigK_residual(E, P.m, P.hbar, P.tau, fd.calB, fd.e_mu, sol.K, P.branch),
                    chi1_residual(p, fd, P))
    return CheckResult("C_K_chi1_residuals", worst <= 1e-10, worst, 1e-10, f"n={n}")


@_timed
def check_curvature(n: int = 1000, seed: int = 2) -> CheckResult:
    """Finite-difference curvature: Richardson ratio 4 +- 15% and the G.p identity."""
    rng = np.random.default_rng(seed)
    ratios = []
    ident = 0.0
    for _ in range(n):
        m = rng.uniform(0.5, 2.0)
        hbar = rng.uniform(0.2, 1.5)
        p = rng.normal(size=3) * rng.uniform(0.3, 2.0)
        G = berry_curvature(p, m, hbar)
        h = 0.05 * max(np.linalg.norm(p), m)
        e1 = np.abs(curvature_fd_oracle(p, m, hbar, h).cv - G.cv).max()
        e2 = np.abs(curvature_fd_oracle(p, m, hbar, h / 2).cv - G.cv).max()
        ratios.append(e1 / e2)
        E = dispersion(p, m)
        lhs = G.dot_real(p / np.linalg.norm(p))
        rhs = PauliCoeff.vector(p / np.linalg.norm(p)) * (hbar / (2 * E * E))
        ident = max(ident, (lhs - rhs).max_abs() / rhs.max_abs())
    ratios = np.asarray(ratios)
    dev = float(np.max(np.abs(ratios / 4.0 - 1.0)))
    ok = dev <= 0.15 and ident <= 1e-12
    return CheckResult("curvature_fd_ratio", ok, dev, 0.15,
                       f"ratio range [{ratios.min():.4f}, {ratios.max():.4f}], G.p identity {ident:.1e}")


@_timed
def check_pfaffian(n: int = 100, seed: int = 3) -> CheckResult:
    """Pauli-form Pfaffian against the scalarized 6x6 Pfaffian.

    Uses the full canonical velocity and corrected energy, where the two
    differ at second order in hbar; the ratio under hbar -> hbar/2 must be 4.
    The simplified kinematics must agree exactly.
    """
    rng = np.random.default_rng(seed)
    dev = 0.0
    exact = 0.0
    for _ in range(n):
        P = random_params(rng, hbar=0.2)
        P = P.replace(x=0.2 * P.x / np.linalg.norm(P.x), Omega=0.2 * random_unit(rng) * rng.uniform(0.2, 1))
        P = P.replace(B=rng.normal(size=3))
        xp = PhasePoint(P.x, rng.normal(size=3))
        nvec = random_unit(rng)
        for s in (1.0, -1.0):
            res = []
            for hb in (0.2, 0.1):
                Q = P.replace(hbar=hb)
                a = pfaffian(xp, Q, "full", "corrected").project(s * nvec).real
                b = pfaffian_6x6_oracle(xp, Q, s * nvec, "full", "corrected")
                res.append(abs(a - b))
            dev = max(dev, abs(res[0] / res[1] / 4.0 - 1.0))
            a = pfaffian(xp, P, "simplified").project(s * nvec).real
            b = pfaffian_6x6_oracle(xp, P, s * nvec, "simplified")
            exact = max(exact, abs(a - b))
    ok = dev <= 0.15 and exact <= 1e-12
    return CheckResult("pfaffian_6x6_hbar2", ok, dev, 0.15,
                       f"simplified kinematics max |diff| {exact:.1e}")


def _rel(a, b) -> float:
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    return float(np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1e-300))


def closed_form_pairs(P2: ParamSet, P3: ParamSet, gm2, gm3, axis):
    """(name, closed form, Integrand, params, grad_mu) for every closed form."""
    z = (0.0, 0.0, 1.0)
    a = tuple(axis)
    return [
        ("n_2d", spin_density_2d(P2), Integrand("density", z, "f0", 2), P2, None),
        ("J_eq_2d", spin_current_2d_eq(P2), Integrand("current", z, "f0", 2), P2, None),
        ("J_neq_2d", spin_current_2d_noneq(P2, gm2), Integrand("current", z, "f1", 2), P2, gm2),
        ("n_3d", spin_density_3d(P3, axis), Integrand("density", a, "f0", 3), P3, None),
        ("J_eq_3d", spin_current_3d_eq(P3, axis), Integrand("current", a, "f0", 3), P3, None),
        ("J_neq_3d_parallel", spin_current_3d_noneq(P3, 2, gm3 * [0, 0, 1], path="special"),
         Integrand("current", z, "f1", 3), P3.replace(Efield=P3.Efield * [0, 0, 1], x=np.zeros(3)),
         gm3 * [0, 0, 1]),
        ("J_neq_3d_perpendicular", spin_current_3d_noneq(P3, 2, gm3 * [1, 1, 0], path="special"),
         Integrand("current", z, "f1", 3), P3.replace(Efield=P3.Efield * [1, 1, 0]), gm3 * [1, 1, 0]),
        ("J_neq_3d_general", spin_current_3d_noneq(P3, axis, gm3), Integrand("current", a, "f1", 3),
         P3, gm3),
    ]


@_timed
def check_closed_forms(n: int = 3, seed: int = 4, T_rel: float = 0.0) -> CheckResult:
    """Every closed form against direct quadrature (T_rel = T / mu)."""
    rng = np.random.default_rng(seed)
    worst, name = 0.0, ""
    tol = 1e-6 if T_rel == 0 else 1e-3
    for _ in range(n):
        P2 = random_params(rng, planar=True)
        P3 = random_params(rng, along_z=True)
        gm2 = rng.normal(size=3) * [1, 1, 0]
        gm3 = rng.normal(size=3)
        axis = random_unit(rng)
        for label, closed, it, P, gm in closed_form_pairs(P2, P3, gm2, gm3, axis):
            # the parallel special case needs the drive along z only
            if label == "J_neq_3d_parallel":
                closed = spin_current_3d_noneq(P, 2, gm, path="special")
            if label == "J_neq_3d_perpendicular":
                closed = spin_current_3d_noneq(P, 2, gm, path="special")
            quad = quad_density(it, P, T_smear=T_rel * P.mu, grad_mu=gm)
            r = _rel(quad, closed)
            if r > worst:
                worst, name = r, label
    return CheckResult("closed_forms_vs_quadrature" + ("_smeared" if T_rel else ""),
                       worst <= tol, worst, tol, f"worst: {name}")


@_timed
def check_consistency(n: int = 5, seed: int = 5) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        P2 = random_params(rng, planar=True)
        P3 = random_params(rng)
        axis = random_unit(rng)
        worst = max(worst,
                    _rel(consistency_quadrature(P2, 2), consistency_check(P2, 2)),
                    _rel(consistency_quadrature(P3, 3, axis), consistency_check(P3, 3, axis)))
    return CheckResult("consistency_coefficients", worst <= 1e-6, worst, 1e-6, f"n={n}")


@_timed
def check_field_independence(n: int = 1000, seed: int = 6) -> CheckResult:
    """(a1^2 + a2^2)/a2 and (b1^2 + b2^2)/b2 against their field-free closed forms."""
    rng = np.random.default_rng(seed)
    base = random_params(rng, planar=True)
    worst = 0.0
    for _ in range(n):
        P = base.replace(tau=rng.uniform(0.05, 5.0), B=[0, 0, rng.uniform(-3, 3)],
                         Omega=[0, 0, rng.uniform(-0.5, 0.5)])
        h = hall_decompose_2d(P)
        worst = max(worst, _rel(h.sigma_sh1, sigma_sh1(P)))
        b1, b2 = b_coefficients(P)
        worst = max(worst, _rel((b1 * b1 + b2 * b2) / b2, sigma_perp_3d(P)))
    return CheckResult("field_independence", worst <= 1e-12, worst, 1e-12, f"n={n}")


@_timed
def check_continuity(seed: int = 7, k: int = 256) -> CheckResult:
    """Divergence of the planar equilibrium current: below 1e-4 with O(h^2) convergence."""
    rng = np.random.default_rng(seed)
    P = random_params(rng, planar=True)
    r1 = continuity_residual(P, h=P.R / (k // 2), parts=("eq",))
    r2 = continuity_residual(P, h=P.R / k, parts=("eq",))
    ratio = r1.residual / r2.residual
    ok = r2.residual <= 1e-4 and abs(ratio / 4 - 1) <= 0.15
    return CheckResult("continuity_equilibrium_current", ok, r2.residual, 1e-4, f"ratio {ratio:.3f}")


def run_checks(level: str = "quick") -> list[CheckResult]:
    if level == "quick":
        return [
            check_chi0(n=2000),
            check_chi_residuals(n=100),
            check_curvature(n=50),
            check_pfaffian(n=20),
            check_closed_forms(n=1),
            check_consistency(n=1),
            check_field_independence(n=200),
            check_continuity(),
        ]
    if level == "full":
        return [
            check_chi0(),
            check_chi_residuals(),
            check_curvature(),
            check_pfaffian(),
            check_closed_forms(n=3),
            check_closed_forms(n=1, T_rel=1e-4),
            check_consistency(),
            check_field_independence(),
            check_continuity(),
        ]
    raise ValueError(f"level must be 'quick' or 'full', got {level!r}")
