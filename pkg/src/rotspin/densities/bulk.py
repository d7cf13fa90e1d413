"""Zero-temperature closed forms for a bulk (three-dimensional) conductor.

B and Omega are required to be parallel. ``axis`` selects the spin component
and may be an index 0-2 or a unit vector. With k = sqrt(mu^2 - m^2) the two
radial integrals

    I_B     = k (mu - 2m)/mu + 2m ln((k + mu)/m) - m arctan(k/m)
    I_Omega = [(mu + 4m) k - m^2 ln((k + mu)/m) - 4 m^2 arctan(k/m)] / 2

carry all of the equilibrium dependence on the filling.
"""

from __future__ import annotations

import numpy as np

from ..model import ParamSet, derived_fields, fermi_momentum, is_parallel

__all__ = [
    "unit_axis",
    "radial_integrals",
    "spin_density_3d",
    "spin_current_3d_eq",
    "spin_current_3d_noneq",
    "spin_current_3d_parallel",
    "spin_current_3d_perpendicular",
    "b_coefficients",
    "sigma_perp_3d",
]

Z = np.array([0.0, 0.0, 1.0])


def unit_axis(axis) -> np.ndarray:
    a = np.asarray(axis, dtype=float)
    if a.shape == ():
        return np.eye(3)[int(a)]
    n = np.linalg.norm(a)
    if n == 0:
        raise ValueError("spin axis must be nonzero")
    return a / n


def _check_parallel(params: ParamSet) -> None:
    if not is_parallel(params.B, params.Omega):
        raise ValueError("B and Omega must be parallel")


def _check_along_z(params: ParamSet) -> None:
    for name in ("B", "Omega"):
        v = getattr(params, name)
        if np.hypot(v[0], v[1]) > 1e-12 * max(1.0, abs(v[2])):
            raise ValueError(f"{name} must point along z for this closed form")


def radial_integrals(mu: float, m: float) -> tuple[float, float]:
    """(I_B, I_Omega); both vanish for an empty band."""
    k = fermi_momentum(mu, m)
    if k == 0:
        return 0.0, 0.0
    L = np.log((k + mu) / m)
    A = np.arctan(k / m)
    I_B = k * (mu - 2 * m) / mu + 2 * m * L - m * A
    I_W = 0.5 * ((mu + 4 * m) * k - m * m * L - 4 * m * m * A)
    return float(I_B), float(I_W)


def spin_density_3d(params: ParamSet, axis=2) -> float:
    """n^a = [q B_a I_B + 2 Omega_a I_Omega] / (12 pi^2 hbar)."""
    _check_parallel(params)
    a = unit_axis(axis)
    I_B, I_W = radial_integrals(params.mu, params.m)
    return (params.q * (params.B @ a) * I_B + 2 * (params.Omega @ a) * I_W) / (12 * np.pi**2 * params.hbar)


def spin_current_3d_eq(params: ParamSet, axis=2) -> np.ndarray:
    """J^a = [q (E' x a) I_B + (((Omega x x) x Omega) x a) I_Omega] / (12 pi^2 hbar).

    E' = E + (Omega x x) x B. Perpendicular to the spin axis.
    """
    _check_parallel(params)
    a = unit_axis(axis)
    I_B, I_W = radial_integrals(params.mu, params.m)
    u = np.cross(params.Omega, params.x)
    E_rot = params.Efield + np.cross(u, params.B)
    centrifugal = np.cross(u, params.Omega)
    return (params.q * np.cross(E_rot, a) * I_B
            + np.cross(centrifugal, a) * I_W) / (12 * np.pi**2 * params.hbar)


def _surface(params: ParamSet, grad_mu):
    mu = params.mu
    fd = derived_fields(params, mu, params.x, grad_mu)
    return fd.e_mu, fd.calB, float(fd.g), float(fd.d2)


def spin_current_3d_noneq(params: ParamSet, axis=2, grad_mu=None, path: str = "general") -> np.ndarray:
    """Collision spin current for spin along ``axis``.

    ``path="general"`` evaluates the Fermi-surface angular average for any
    orientation of the drive. ``path="special"`` requires B, Omega and the
    axis along z and sums the closed forms for the drive components along
    and across z.
    """
    _check_parallel(params)
    a = unit_axis(axis)
    if path == "special":
        if not np.allclose(a, Z, atol=1e-12):
            raise ValueError("the special-case forms are for spin along z")
        return spin_current_3d_parallel(params, grad_mu) + spin_current_3d_perpendicular(params, grad_mu)
    if path != "general":
        raise ValueError(f"path must be 'general' or 'special', got {path!r}")
    mu, m = params.mu, params.m
    k = fermi_momentum(mu, m)
    if k == 0:
        return np.zeros(3)
    e, B, g, d2 = _surface(params, grad_mu)
    eB = float(e @ B)
    B_a = float(B @ a)
    chi0 = (g * e - g * g * np.cross(B, e) + g**3 * B * eB) / (1 + d2)
    C = (-chi0 + g * np.cross(B, chi0) - g * g * (B @ chi0) * B) / (1 + d2)
    bracket = (g * eB * mu * a
               + m * B_a * C
               + (mu - m) / 5.0 * (a * (B @ C) + B * (C @ a) + B_a * C)
               - m * eB / (1 + d2) * (g * g * np.cross(B, a) - g**3 * B_a * B + g**3 * (B @ B) * a)
               + mu * B * (chi0 @ a))
    return k**3 / mu**3 * bracket / (12 * np.pi**2 * params.hbar)


def spin_current_3d_parallel(params: ParamSet, grad_mu=None) -> np.ndarray:
    """z-spin current from the drive component along z (B, Omega along z).

    J_3 = tau k^3 (7 mu - 2m) calB_mu e_3 / (60 pi^2 hbar mu^4), directed along z.
    """
    _check_along_z(params)
    mu, m = params.mu, params.m
    k = fermi_momentum(mu, m)
    if k == 0:
        return np.zeros(3)
    e, B, _, _ = _surface(params, grad_mu)
    J3 = params.tau * k**3 * (7 * mu - 2 * m) * B[2] * e[2] / (60 * np.pi**2 * params.hbar * mu**4)
    return J3 * Z


def spin_current_3d_perpendicular(params: ParamSet, grad_mu=None) -> np.ndarray:
    """z-spin current from the drive component across z (B, Omega along z).

    -tau (4m + mu) k^3 calB_mu [(1 - d^2) e - 2 d z x e] / (60 pi^2 hbar D^2)
    with d = tau calB_mu / mu and D = mu^2 + tau^2 calB_mu^2.
    """
    _check_along_z(params)
    mu, m, tau = params.mu, params.m, params.tau
    k = fermi_momentum(mu, m)
    if k == 0:
        return np.zeros(3)
    e, B, _, _ = _surface(params, grad_mu)
    e = e - Z * e[2]
    Bz = B[2]
    d = tau * Bz / mu
    D = mu * mu + tau * tau * Bz * Bz
    return (-tau * (4 * m + mu) * k**3 * Bz / (60 * np.pi**2 * params.hbar * D * D)
            * ((1 - d * d) * e - 2 * d * np.cross(Z, e)))


def b_coefficients(params: ParamSet) -> tuple[float, float]:
    """(b1, b2): coefficients of E' and z x E' in the perpendicular collision current."""
    _check_along_z(params)
    mu, m, tau, q = params.mu, params.m, params.tau, params.q
    k = fermi_momentum(mu, m)
    Bz = q * params.B[2] + 2 * mu * params.Omega[2]
    d = tau * Bz / mu
    D = mu * mu + tau * tau * Bz * Bz
    X = (4 * m + mu) * k**3 / (60 * np.pi**2 * params.hbar)
    b1 = -q * X * tau * Bz * (1 - d * d) / (D * D)
    b2 = 2 * q * X * tau * tau * Bz * Bz / (mu * D * D)
    return float(b1), float(b2)


def sigma_perp_3d(params: ParamSet) -> float:
    """(b1^2 + b2^2)/b2 = q (4m + mu) k^3 / (120 pi^2 hbar mu^3), independent of tau, B, Omega."""
    mu, m = params.mu, params.m
    k = fermi_momentum(mu, m)
    return params.q * (4 * m + mu) * k**3 / (120 * np.pi**2 * params.hbar * mu**3)
