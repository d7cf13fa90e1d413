"""Zero-temperature closed forms for a planar conductor on a rotating disk.

Geometry: B and Omega along z, momenta and the electric field in the plane,
and the observation point on the circle x = R rho_hat. The spin axis is z.
Outputs are Cartesian 3-vectors.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ..model import ParamSet, derived_fields, planar_position

__all__ = [
    "ValidityWarning",
    "HallDecomposition",
    "spin_density_2d",
    "spin_current_2d_eq",
    "sigma_sh",
    "sigma_sh1",
    "spin_current_2d_noneq",
    "hall_decompose_2d",
    "drive_2d",
    "eq_current_field",
    "noneq_current_field",
]

Z = np.array([0.0, 0.0, 1.0])


class ValidityWarning(UserWarning):
    """A coefficient was requested at a point where it is undefined."""


@dataclass(frozen=True)
class HallDecomposition:
    """Split of the collision current into parts along E' and along z x E'.

    ``sigma_sh1 = (a1^2 + a2^2) / a2`` and ``ohm_coeff = (a1^2 + a2^2) / a1``
    are ``nan`` where undefined; the matching ``*_valid`` flag is then False.
    """

    a1: float
    a2: float
    sigma_sh1: float
    ohm_coeff: float
    sigma_sh1_valid: bool
    ohm_valid: bool


def _check_planar(params: ParamSet) -> None:
    for name in ("B", "Omega"):
        v = getattr(params, name)
        if np.hypot(v[0], v[1]) > 1e-12 * max(1.0, abs(v[2])):
            raise ValueError(f"{name} must point along z in the planar geometry")
    if abs(params.Efield[2]) > 1e-12 * max(1.0, float(np.linalg.norm(params.Efield))):
        raise ValueError("the electric field must lie in the plane")


def _filling(params: ParamSet) -> float:
    """(mu - m)/mu, zero for an empty band."""
    return (params.mu - params.m) / params.mu if params.mu > params.m else 0.0


def _log_ratio(params: ParamSet) -> float:
    return float(np.log(params.mu / params.m)) if params.mu > params.m else 0.0


def spin_density_2d(params: ParamSet) -> float:
    """n^z = (q B / 4 pi)(mu - m)/mu + (Omega m / 2 pi) ln(mu/m)."""
    _check_planar(params)
    B, W = params.B[2], params.Omega[2]
    return (params.q * B / (4 * np.pi) * _filling(params)
            + W * params.m / (2 * np.pi) * _log_ratio(params))


def sigma_sh(params: ParamSet) -> float:
    """sigma_SH = -(q / 4 pi)(mu - m)/mu."""
    return -params.q / (4 * np.pi) * _filling(params)


def sigma_sh1(params: ParamSet) -> float:
    """Field-independent Hall coefficient of the collision current, (q m / 16 pi)(mu^2 - m^2)/mu^3."""
    mu, m = params.mu, params.m
    if mu <= m:
        return 0.0
    return params.q * m / (16 * np.pi) * (mu * mu - m * m) / mu**3


def spin_current_2d_eq(params: ParamSet) -> np.ndarray:
    """Equilibrium spin current.

    (q/4pi) c E x z - (q Omega B R / 4pi) c phi_hat - (Omega^2 R m / 4pi) ln(mu/m) phi_hat
    with c = (mu - m)/mu and phi_hat = z x rho_hat. Equivalently
    sigma_SH z x E' plus the centrifugal term, E' = E + Omega B R rho_hat.
    """
    _check_planar(params)
    rho_hat, _ = planar_position(params)
    return eq_current_field(params, rho_hat[None, :], np.array([params.R]),
                            params.Efield[None, :])[0]


def eq_current_field(params: ParamSet, rho_hat, R, Efield) -> np.ndarray:
    """Vectorized equilibrium current for circles of radius ``R`` (N,) at directions ``rho_hat`` (N, 3)."""
    phi_hat = np.cross(Z, rho_hat)
    B, W, q = params.B[2], params.Omega[2], params.q
    c = _filling(params)
    R = np.asarray(R, dtype=float)[:, None]
    return (q / (4 * np.pi) * c * np.cross(Efield, Z)
            - q * W * B * R / (4 * np.pi) * c * phi_hat
            - W * W * R * params.m / (4 * np.pi) * _log_ratio(params) * phi_hat)


def drive_2d(params: ParamSet, grad_mu=None) -> tuple[np.ndarray, float]:
    """Fermi-surface drive e_mu = q E' + mu Omega^2 R rho_hat - grad mu, and d = tau calB_mu / mu."""
    _, x = planar_position(params)
    fd = derived_fields(params, params.mu, x, grad_mu)
    return fd.e_mu, float(fd.g * fd.calB[2])


def _prefactor(params: ParamSet) -> float:
    mu, m = params.mu, params.m
    return m * (mu * mu - m * m) / (8 * np.pi * mu**3)


def spin_current_2d_noneq(params: ParamSet, grad_mu=None) -> np.ndarray:
    """Collision (relaxation-time) spin current.

    -P d / (1 + d^2)^2 [(1 - d^2) e_mu - 2 d z x e_mu]
    with P = m (mu^2 - m^2) / (8 pi mu^3) and d = tau (q B + 2 mu Omega) / mu.
    """
    _check_planar(params)
    rho_hat, _ = planar_position(params)
    return noneq_current_field(params, rho_hat[None, :], np.array([params.R]),
                               params.Efield[None, :], grad_mu)[0]


def noneq_current_field(params: ParamSet, rho_hat, R, Efield, grad_mu=None) -> np.ndarray:
    """Vectorized collision current for circles of radius ``R`` (N,) at directions ``rho_hat`` (N, 3)."""
    rho_hat = np.asarray(rho_hat, dtype=float)
    if params.mu <= params.m:
        return np.zeros(rho_hat.shape)
    mu, W, q = params.mu, params.Omega[2], params.q
    gm = np.zeros(3) if grad_mu is None else np.asarray(grad_mu, dtype=float)
    R = np.asarray(R, dtype=float)[:, None]
    # e_mu at the Fermi surface: q E + (q Omega B + mu Omega^2) R rho_hat - grad mu
    e_mu = q * Efield + (q * W * params.B[2] + mu * W * W) * R * rho_hat - gm
    e_mu = e_mu - Z * e_mu[:, 2:3]
    d = params.tau * (q * params.B[2] + 2 * mu * W) / mu
    P = _prefactor(params)
    return -P * d / (1 + d * d) ** 2 * ((1 - d * d) * e_mu - 2 * d * np.cross(Z, e_mu))


def hall_decompose_2d(params: ParamSet) -> HallDecomposition:
    """Coefficients of the collision current with respect to q E' and z x q E'.

    a1 multiplies E' and a2 multiplies z x E'.
    """
    _check_planar(params)
    tau, mu = params.tau, params.mu
    d = tau * (params.q * params.B[2] + 2 * mu * params.Omega[2]) / mu
    P = _prefactor(params) if mu > params.m else 0.0
    q = params.q
    a1 = -q * P * d * (1 - d * d) / (1 + d * d) ** 2
    a2 = 2 * q * P * d * d / (1 + d * d) ** 2
    s1_valid = a2 != 0.0
    ohm_valid = a1 != 0.0 and abs(abs(d) - 1.0) > 1e-12
    if s1_valid:
        s1 = (a1 * a1 + a2 * a2) / a2
    else:
        s1 = float("nan")
        warnings.warn("sigma_SH1 undefined: a2 = 0 (calB_mu = 0 or empty band)", ValidityWarning,
                      stacklevel=2)
    if ohm_valid:
        ohm = -q * P * d / (1 - d * d)
    else:
        ohm = float("nan")
        warnings.warn("Ohm-like coefficient outside validity (|g calB| = 1 or a1 = 0)",
                      ValidityWarning, stacklevel=2)
    return HallDecomposition(a1=a1, a2=a2, sigma_sh1=s1, ohm_coeff=ohm,
                             sigma_sh1_valid=bool(s1_valid), ohm_valid=bool(ohm_valid))
