"""Relaxation-time solution of the kinetic equation to first order in the drive.

The first-order distribution is written f1 = -(df0/dE)(chi . p) + tau (df0/dE)(dmu/dt)
with chi = chi0 + chi1. chi0 and C are ordinary vectors fixed by the energy
and the fields, while chi1 and K are spin valued and proportional to hbar.

All functions return f1 as the coefficient of ``df0/dE``. At zero temperature
that derivative is the surface token ``SurfaceDelta`` rather than a number.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .berry import berry_curvature
from .kinematics import PhasePoint
from .model import DerivedFields, ParamSet, derived_fields, dispersion
from .spinalg import LEVI_CIVITA, MatrixVector3, PauliCoeff

__all__ = [
    "SurfaceDelta",
    "ChiSolution",
    "DistributionPoint",
    "f0",
    "df0_dE",
    "chi0",
    "chi0_linear_oracle",
    "bigC",
    "bigK",
    "chi1",
    "solve_chi",
    "chi0_residual",
    "bigC_residual",
    "bigK_residual",
    "chi1_residual",
    "f1",
    "f1_from_chi",
    "distribution_point",
]


@dataclass(frozen=True)
class SurfaceDelta:
    """Zero-temperature ``df0/dE = -delta(E - mu)``, kept symbolic."""

    mu: float
    sign: float = -1.0

    def __repr__(self):
        return f"{'-' if self.sign < 0 else ''}delta(E - {self.mu:g})"


@dataclass(frozen=True)
class ChiSolution:
    chi0: np.ndarray
    C: np.ndarray
    K: MatrixVector3
    chi1: MatrixVector3
    at_energy: np.ndarray


@dataclass(frozen=True)
class DistributionPoint:
    f0: np.ndarray
    df0_dE: np.ndarray | SurfaceDelta
    f1: PauliCoeff
    at: PhasePoint


def f0(E, mu: float, T: float, branch: int = 1):
    """Fermi-Dirac occupation 1 / (exp[(E - s mu)/T] + 1); a step at T = 0."""
    E = np.asarray(E, dtype=float)
    if T < 0:
        raise ValueError("temperature must be non-negative")
    if T == 0:
        if branch != 1:
            return np.zeros_like(E)
        return np.where(E < mu, 1.0, np.where(E > mu, 0.0, 0.5))
    return expit(-(E - branch * mu) / T)


def df0_dE(E, mu: float, T: float, branch: int = 1):
    """Energy derivative of f0; a ``SurfaceDelta`` token at T = 0."""
    if T == 0:
        return SurfaceDelta(mu)
    f = f0(E, mu, T, branch)
    return -f * (1.0 - f) / T


def _cross(a, b):
    return np.cross(a, b)


def _dot(a, b):
    return np.einsum("...i,...i->...", a, b)


def chi0(E, tau: float, calB, e_mu) -> np.ndarray:
    """chi0 = [g e - g^2 calB x e + g^3 calB (e . calB)] / (1 + d^2)."""
    E = np.asarray(E, dtype=float)
    calB = np.asarray(calB, dtype=float)
    e_mu = np.asarray(e_mu, dtype=float)
    g = (tau / E)[..., None]
    d2 = g * g * _dot(calB, calB)[..., None]
    num = g * e_mu - g * g * _cross(calB, e_mu) + g**3 * calB * _dot(e_mu, calB)[..., None]
    return num / (1.0 + d2)


def chi0_linear_oracle(E, tau: float, calB, e_mu) -> np.ndarray:
    """Solve e - calB x chi = (E/tau) chi as a 3x3 linear system."""
    E = np.asarray(E, dtype=float)
    calB = np.asarray(calB, dtype=float)
    e_mu = np.asarray(e_mu, dtype=float)
    shape = np.broadcast_shapes(E.shape, calB.shape[:-1], e_mu.shape[:-1])
    # (calB x chi)_i = eps_ijk calB_j chi_k
    crossmat = np.einsum("ijk,...j->...ik", LEVI_CIVITA, np.broadcast_to(calB, shape + (3,)))
    M = crossmat + (np.broadcast_to(E, shape) / tau)[..., None, None] * np.eye(3)
    rhs = np.broadcast_to(e_mu, shape + (3,))
    return np.linalg.solve(M, rhs[..., None])[..., 0]


def bigC(chi0_vec, g, calB, d2) -> np.ndarray:
    """C = [-chi0 + g calB x chi0 - g^2 (calB . chi0) calB] / (1 + d^2)."""
    chi0_vec = np.asarray(chi0_vec, dtype=float)
    calB = np.asarray(calB, dtype=float)
    g = np.asarray(g, dtype=float)[..., None]
    d2 = np.asarray(d2, dtype=float)[..., None]
    num = -chi0_vec + g * _cross(calB, chi0_vec) - g * g * _dot(calB, chi0_vec)[..., None] * calB
    return num / (1.0 + d2)


def bigK(E, m: float, hbar: float, g, calB, e_mu, d2, branch: int = 1) -> MatrixVector3:
    """K = -s (m hbar / 2E^3)[g^2 (calB x sigma) - g^3 calB x (calB x sigma)](e . calB)/(1 + d^2)."""
    E = np.asarray(E, dtype=float)
    calB = np.asarray(calB, dtype=float)
    g = np.asarray(g, dtype=float)
    d2 = np.asarray(d2, dtype=float)
    # sigma_k coefficient of component i
    cross_sigma = np.einsum("ijk,...j->...ik", LEVI_CIVITA, calB)
    bb = calB[..., :, None] * calB[..., None, :]
    double_cross = bb - _dot(calB, calB)[..., None, None] * np.eye(3)
    eB = _dot(e_mu, calB)
    pref = -branch * (m * hbar / (2.0 * E**3)) * eB / (1.0 + d2)
    cv = (g * g)[..., None, None] * cross_sigma - (g**3)[..., None, None] * double_cross
    cv = cv * pref[..., None, None]
    return MatrixVector3(np.zeros(cv.shape[:-1]), cv)


def chi1(p, fields: DerivedFields, params: ParamSet) -> MatrixVector3:
    """chi1 = s g (e . calB) G + s (G . calB) C + K."""
    return solve_chi(p, fields, params).chi1


def solve_chi(p, fields: DerivedFields, params: ParamSet) -> ChiSolution:
    p = np.asarray(p, dtype=float)
    s = params.branch
    f = fields
    c0 = chi0(f.E, params.tau, f.calB, f.e_mu)
    C = bigC(c0, f.g, f.calB, f.d2)
    K = bigK(f.E, params.m, params.hbar, f.g, f.calB, f.e_mu, f.d2, s)
    G = berry_curvature(p, params.m, params.hbar)
    eB = _dot(f.e_mu, f.calB)
    GB = G.dot_real(f.calB)
    c1 = G * (s * f.g * eB) + MatrixVector3.outer(C, GB) * s + K
    return ChiSolution(chi0=c0, C=C, K=K, chi1=c1, at_energy=f.E)


def _scale_of(*arrays) -> float:
    return max([1e-300] + [float(np.max(np.abs(a), initial=0.0)) for a in arrays])


def chi0_residual(E, tau, calB, e_mu, chi) -> float:
    """Relative residual of e - calB x chi - (E/tau) chi."""
    E = np.asarray(E, dtype=float)[..., None]
    lhs = np.asarray(e_mu) - _cross(calB, chi)
    rhs = E / tau * chi
    return float(np.max(np.abs(lhs - rhs))) / _scale_of(e_mu, rhs)


def bigC_residual(E, tau, calB, chi0_vec, C) -> float:
    """Relative residual of -(E/tau) chi0 - calB x C - (E/tau) C."""
    E = np.asarray(E, dtype=float)[..., None]
    a = -E / tau * chi0_vec
    b = _cross(calB, C)
    c = E / tau * C
    return float(np.max(np.abs(a - b - c))) / _scale_of(a, b, c)


def bigK_residual(E, m, hbar, tau, calB, e_mu, K: MatrixVector3, branch: int = 1) -> float:
    """Relative residual of -s g (m hbar/2E^3)(calB x sigma)(e . calB) - calB x K - (E/tau) K."""
    E = np.asarray(E, dtype=float)
    calB = np.asarray(calB, dtype=float)
    g = tau / E
    src = np.einsum("ijk,...j->...ik", LEVI_CIVITA, calB)
    src = src * (-branch * g * m * hbar / (2.0 * E**3) * _dot(e_mu, calB))[..., None, None]
    BxK = K.rcross_real(calB)
    rhs = K * (E / tau)
    res = src - BxK.cv - rhs.cv
    return float(np.max(np.abs(res))) / _scale_of(src, BxK.cv, rhs.cv)


def chi1_residual(p, fields: DerivedFields, params: ParamSet, *,
                  energy_factor: bool = True) -> float:
    """Relative residual of the chi1 equation.

    -((p/E) x calB) . chi1 + s (e . calB)(G . p)/E = (1/tau) chi1 . p + s (1/tau)(G . calB)(chi0 . p)

    ``energy_factor=False`` drops the 1/E on the second term, which leaves a
    finite residual and is kept only to document that variant.
    """
    p = np.asarray(p, dtype=float)
    f = fields
    s = params.branch
    sol = solve_chi(p, f, params)
    G = berry_curvature(p, params.m, params.hbar)
    v = p / f.E[..., None]
    t1 = -sol.chi1.dot_real(_cross(v, f.calB))
    src = G.dot_real(p) * (s * _dot(f.e_mu, f.calB))
    if energy_factor:
        src = src / f.E
    t3 = sol.chi1.dot_real(p) / params.tau
    t4 = G.dot_real(f.calB) * (s * _dot(sol.chi0, p) / params.tau)
    res = t1 + src - t3 - t4
    scale = max(t1.max_abs(), src.max_abs(), t3.max_abs(), t4.max_abs(), 1e-300)
    return res.max_abs() / scale


def f1_from_chi(xp: PhasePoint, params: ParamSet, chi: ChiSolution, dmu_dt: float = 0.0) -> PauliCoeff:
    """Coefficient of df0/dE in f1 = -(df0/dE)(chi . p) + tau (df0/dE)(dmu/dt)."""
    p = xp.p
    return -(chi.chi1.dot_real(p) + _dot(chi.chi0, p)) + params.tau * dmu_dt


def f1(xp: PhasePoint, params: ParamSet, grad_mu=None, dmu_dt: float = 0.0) -> PauliCoeff:
    """Coefficient of df0/dE in f1, written out in expanded form.

    Evaluated at the energy E(p) of each momentum, with the drive
    e_mu = e(E, x) - grad mu.
    """
    p = xp.p
    E = dispersion(p, params.m)
    fd = derived_fields(params, E, xp.x, grad_mu)
    s = params.branch
    g, B, e, d2 = fd.g, fd.calB, fd.e_mu, fd.d2
    G = berry_curvature(p, params.m, params.hbar)
    Gp = G.dot_real(p)
    GB = G.dot_real(B)
    Be = _dot(B, e)
    Bxe_p = _dot(_cross(B, e), p)
    ep = _dot(e, p)
    Bp = _dot(B, p)
    sig_p = PauliCoeff.vector(p)
    kpref = s * g * g * params.m * params.hbar / (2.0 * E**3) * Be
    # p . (calB x sigma) = sigma . (p x calB);  p . (calB x (calB x sigma)) = (B.p)(B.sigma) - B^2 (p.sigma)
    K_p = (PauliCoeff.vector(_cross(p, B))
           - (PauliCoeff.vector(Bp[..., None] * B) - sig_p * _dot(B, B)) * g)
    bracket = (PauliCoeff.scalar(g * ep - g * g * Bxe_p)
               + (1.0 - GB * s) * (g**3 * Be * Bp)
               - K_p * kpref)
    tail = GB * (s / (1.0 + d2) ** 2 * (g * (1.0 - d2) * ep - 2.0 * g * g * Bxe_p
                                        + 2.0 * g**3 * Be * Bp))
    total = Gp * (s * g * Be) - params.tau * dmu_dt + bracket / (1.0 + d2) - tail
    return -total


def distribution_point(xp: PhasePoint, params: ParamSet, grad_mu=None,
                       dmu_dt: float = 0.0) -> DistributionPoint:
    E = dispersion(xp.p, params.m)
    return DistributionPoint(
        f0=f0(E, params.mu, params.T, params.branch),
        df0_dE=df0_dE(E, params.mu, params.T, params.branch),
        f1=f1(xp, params, grad_mu, dmu_dt),
        at=xp,
    )
