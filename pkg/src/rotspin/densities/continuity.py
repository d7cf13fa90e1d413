"""Time-derivative consistency coefficients and the divergence of the planar spin current."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..model import ParamSet, fermi_momentum
from .bulk import unit_axis
from .planar import _check_planar, eq_current_field, noneq_current_field
from .quadrature import Integrand, quad_density

__all__ = [
    "consistency_check",
    "consistency_quadrature",
    "ContinuityResult",
    "planar_current_field",
    "continuity_residual",
    "analytic_divergence_2d",
]


def consistency_check(params: ParamSet, dimension: int, axis=2) -> float:
    """Coefficient of d(mu)/dt in the momentum integral of Tr[sigma_a omega^(1/2) f1].

    2D: -(tau / 2 pi hbar)(m / mu^2) calB_mu
    3D: -(tau / 6 pi^2 hbar^2)((2m + mu)/mu^2) k calB_mu,a
    with calB_mu = q B + 2 mu Omega. A nonzero value forces d(mu)/dt = 0.
    """
    mu, m, tau, hbar = params.mu, params.m, params.tau, params.hbar
    k = fermi_momentum(mu, m)
    if k == 0:
        return 0.0
    calB = params.q * params.B + 2 * mu * params.Omega
    if dimension == 2:
        return float(-tau / (2 * np.pi * hbar) * m / mu**2 * calB[2])
    if dimension == 3:
        a = unit_axis(axis)
        return float(-tau / (6 * np.pi**2 * hbar**2) * (2 * m + mu) / mu**2 * k * (calB @ a))
    raise ValueError("dimension must be 2 or 3")


def consistency_quadrature(params: ParamSet, dimension: int, axis=2, T_smear=None) -> float:
    """Direct quadrature of the same coefficient, with the drive switched off."""
    quiet = params.replace(Efield=np.zeros(3), x=np.zeros(3))
    it = Integrand("density", axis, "f1", dimension, spin_factor=False)
    return float(quad_density(it, quiet, T_smear=T_smear, dmu_dt=1.0))


@dataclass(frozen=True)
class ContinuityResult:
    """Normalized divergence ``max|div j| / (max|j| / L)`` on a grid of step ``h``."""

    residual: float
    h: float
    max_divergence: float
    current_scale: float
    n_points: int


def planar_current_field(params: ParamSet, points, parts=("eq", "noneq"), grad_mu=None) -> np.ndarray:
    """Planar spin current at each point of ``points`` (shape (N, 2) or (N, 3)).

    Each point is treated as its own circle: R = |x| and rho_hat = x / |x|.
    The external field is radial with the magnitude of the radial component of
    ``params.Efield`` at the reference direction; ``grad_mu`` is constant.
    """
    pts = np.asarray(points, dtype=float)
    ref = np.array([params.x[0], params.x[1], 0.0])
    nref = np.linalg.norm(ref)
    ref = ref / nref if nref > 0 else np.array([1.0, 0.0, 0.0])
    E_rho = float(params.Efield @ ref)
    r = np.hypot(pts[:, 0], pts[:, 1])
    rho = np.stack([pts[:, 0] / r, pts[:, 1] / r, np.zeros_like(r)], axis=-1)
    E = E_rho * rho
    out = np.zeros((pts.shape[0], 3))
    if "eq" in parts:
        out += eq_current_field(params, rho, r, E)
    if "noneq" in parts:
        out += noneq_current_field(params, rho, r, E, grad_mu)
    return out


def continuity_residual(params: ParamSet, spatial_grid=None, *, h: float | None = None,
                        r_in: float | None = None, r_out: float | None = None,
                        parts=("eq", "noneq"), grad_mu=None) -> ContinuityResult:
    """Numerical divergence of the planar spin current on an annulus.

    The density is static, so continuity requires a divergence-free current.
    ``spatial_grid`` may give the grid step directly; the divergence uses
    central differences at the nodes of a square grid lying inside
    ``r_in <= |x| <= r_out`` (defaults 0.5 R and 1.5 R).
    """
    _check_planar(params)
    if spatial_grid is not None and h is None:
        h = float(spatial_grid)
    R = params.R
    r_in = 0.5 * R if r_in is None else r_in
    r_out = 1.5 * R if r_out is None else r_out
    h = R / 16 if h is None else h
    n = int(np.ceil(r_out / h))
    axis = h * np.arange(-n, n + 1)
    X, Y = np.meshgrid(axis, axis, indexing="ij")
    r = np.hypot(X, Y)
    mask = (r >= r_in) & (r <= r_out)
    nodes = np.stack([X[mask], Y[mask]], axis=-1)
    offsets = np.array([[h, 0.0], [-h, 0.0], [0.0, h], [0.0, -h]])
    stencil = (nodes[:, None, :] + offsets[None, :, :]).reshape(-1, 2)
    J = planar_current_field(params, stencil, parts, grad_mu).reshape(-1, 4, 3)
    div = (J[:, 0, 0] - J[:, 1, 0]) / (2 * h) + (J[:, 2, 1] - J[:, 3, 1]) / (2 * h)
    centre = planar_current_field(params, nodes, parts, grad_mu)
    scale = float(np.max(np.linalg.norm(centre, axis=-1), initial=0.0))
    max_div = float(np.max(np.abs(div), initial=0.0))
    L = r_out
    residual = 0.0 if scale == 0.0 else max_div / (scale / L)
    return ContinuityResult(residual=residual, h=h, max_divergence=max_div,
                            current_scale=scale, n_points=int(nodes.shape[0]))


def analytic_divergence_2d(params: ParamSet, r: float, grad_mu=None, dr: float = 1e-5) -> float:
    """Divergence of the collision current from its radial profile, (1/r) d(r j_r)/dr.

    The equilibrium part is azimuthal with a profile depending only on r and so
    contributes nothing; the radial part of the collision current does.
    """
    def rj(rr):
        pt = np.array([[rr, 0.0]])
        return rr * planar_current_field(params, pt, ("noneq",), grad_mu)[0, 0]

    return float((rj(r + dr) - rj(r - dr)) / (2 * dr) / r)
