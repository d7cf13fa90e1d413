"""Closed forms exactly as typeset in the reference literature for this model.

Several of them disagree with direct quadrature of the integrals they are
meant to evaluate, so the library functions in ``rotspin.densities`` use
re-derived expressions instead. These versions exist for side-by-side
comparison and for the regression tests that document each disagreement.
Where a printed expression contains df0/dE, it is evaluated at zero
temperature with df0/dE = -delta(E - mu).
"""

from __future__ import annotations

import numpy as np

from .densities.bulk import _check_along_z, _check_parallel, unit_axis
from .densities.planar import _check_planar
from .model import ParamSet, derived_fields, fermi_momentum, planar_position

__all__ = [
    "consistency_2d",
    "consistency_3d",
    "spin_current_2d_noneq",
    "a_coefficients",
    "ohm_coefficient",
    "sigma_sh1",
    "spin_density_3d",
    "spin_current_3d_eq",
    "spin_current_3d_noneq",
    "spin_current_3d_parallel",
    "spin_current_3d_perpendicular",
    "b_coefficients",
    "sigma_perp_3d",
]

Z = np.array([0.0, 0.0, 1.0])


def _calB_mu(params: ParamSet) -> float:
    return params.q * params.B[2] + 2 * params.mu * params.Omega[2]


def consistency_2d(params: ParamSet) -> float:
    """(tau / 2 pi hbar)(m / mu^2)(q B + 2 mu Omega)."""
    return params.tau / (2 * np.pi * params.hbar) * params.m / params.mu**2 * _calB_mu(params)


def consistency_3d(params: ParamSet, axis=2) -> float:
    """(tau / 6 pi^2 hbar^2)((2m + mu)/mu^2) k (q B_a + 2 mu Omega_a)."""
    a = unit_axis(axis)
    mu, m = params.mu, params.m
    k = fermi_momentum(mu, m)
    calB = params.q * params.B + 2 * mu * params.Omega
    return params.tau / (6 * np.pi**2 * params.hbar**2) * (2 * m + mu) / mu**2 * k * float(calB @ a)


def spin_current_2d_noneq(params: ParamSet, grad_mu=None) -> np.ndarray:
    """Final line of the planar collision current as printed.

    P d/(1+d^2)^2 [(1-d^2)(q E' - grad mu + mu R Omega^2 rho) + 2d (z x (q E' - grad mu) + mu R Omega^2 phi)]
    """
    _check_planar(params)
    mu, m, tau, q = params.mu, params.m, params.tau, params.q
    if mu <= m:
        return np.zeros(3)
    rho_hat, x = planar_position(params)
    gm = np.zeros(3) if grad_mu is None else np.asarray(grad_mu, dtype=float)
    W = params.Omega[2]
    E_rot = params.Efield + W * params.B[2] * params.R * rho_hat
    lin = q * E_rot - gm
    d = tau * _calB_mu(params) / mu
    P = m * (mu * mu - m * m) / (8 * np.pi * mu**3)
    cen = mu * params.R * W * W
    return P * d / (1 + d * d) ** 2 * ((1 - d * d) * (lin + cen * rho_hat)
                                       + 2 * d * (np.cross(Z, lin) + cen * np.cross(Z, rho_hat)))


def a_coefficients(params: ParamSet) -> tuple[float, float]:
    """(a1, a2) as printed, including an overall factor hbar."""
    mu, m, q, hbar = params.mu, params.m, params.q, params.hbar
    d = params.tau * _calB_mu(params) / mu
    P = m * q * hbar / (8 * np.pi) * (mu * mu - m * m) / mu**3
    return P * d * (1 - d * d) / (1 + d * d) ** 2, 2 * P * d * d / (1 + d * d) ** 2


def ohm_coefficient(params: ParamSet) -> float:
    """(q m / 8 pi)((mu^2 - m^2)/mu^3) d / (1 - d^2)."""
    mu, m = params.mu, params.m
    d = params.tau * _calB_mu(params) / mu
    return params.q * m / (8 * np.pi) * (mu * mu - m * m) / mu**3 * d / (1 - d * d)


def sigma_sh1(params: ParamSet) -> float:
    mu, m = params.mu, params.m
    return params.q * m / (16 * np.pi) * (mu * mu - m * m) / mu**3


def spin_density_3d(params: ParamSet, axis=2) -> float:
    """Spin density with both brackets as printed."""
    _check_parallel(params)
    a = unit_axis(axis)
    mu, m, hbar = params.mu, params.m, params.hbar
    k = fermi_momentum(mu, m)
    if k == 0:
        return 0.0
    L = np.log((k + mu) / m)
    T = np.arctan(m / k) - np.pi / 2
    nb = (params.q * m * float(params.B @ a) / (12 * np.pi**2 * hbar)
          * ((mu - 2 * m) * k / m + 2 * m * L + m * T))
    nw = (m * m * float(params.Omega @ a) / (12 * np.pi**2 * hbar)
          * ((4 * m + mu) * k / (m * m) - L + 4 * T))
    return float(nb + nw)


def spin_current_3d_eq(params: ParamSet, axis=2) -> np.ndarray:
    """Equilibrium current with both brackets as printed."""
    _check_parallel(params)
    a = unit_axis(axis)
    mu, m, hbar = params.mu, params.m, params.hbar
    k = fermi_momentum(mu, m)
    if k == 0:
        return np.zeros(3)
    L = np.log((k + mu) / m)
    T = np.arctan(m / k) - np.pi / 2
    u = np.cross(params.Omega, params.x)
    E_rot = params.Efield + np.cross(u, params.B)
    jb = params.q / (12 * np.pi**2 * hbar) * np.cross(E_rot, a) * (k * (1 - 2 * m / mu) + 2 * m * L + m * T)
    jw = (np.cross(np.cross(u, params.Omega), a) / (12 * np.pi**2 * hbar)
          * ((4 * m + mu) * k - m * m * L + 4 * m * m * T))
    return jb + jw


def spin_current_3d_noneq(params: ParamSet, axis=2, grad_mu=None) -> np.ndarray:
    """The printed angular-averaged integrand, collapsed onto the Fermi surface."""
    _check_parallel(params)
    a = unit_axis(axis)
    mu, m = params.mu, params.m
    k = fermi_momentum(mu, m)
    if k == 0:
        return np.zeros(3)
    fd = derived_fields(params, mu, params.x, grad_mu)
    e, B, g, d2 = fd.e_mu, fd.calB, float(fd.g), float(fd.d2)
    E = mu
    eB = float(B @ e)
    Ba = float(B @ a)
    BB = float(B @ B)
    Bxe = np.cross(B, e)
    ea = float(e @ a)
    br = (eB / (1 + d2) * g * g * (2 * g / 5 * (E - m) * Ba * B - m * g * BB * a + np.cross(B, a))
          - eB * g * m / 5 * a
          - 2 * E * g / (1 + d2) * (ea - g * float(Bxe @ a) + g * g * eB * Ba) * B
          + g / (5 * (1 + d2) ** 2) * (
              (E - 4 * m) * ((1 - g * g * BB) * Ba * e - 2 * g * Ba * Bxe + 2 * g * g * eB * Ba * B)
              + (E - m) * ((1 - g * g * BB) * ea * B - 2 * g * float(Bxe @ a) * B + 2 * g * g * eB * Ba * B)))
    # integral of dp p^4/E^4 (-delta(E - mu)) X = -(k^4/mu^4)(mu/k) X
    return -(k**3 / mu**3) * br / (12 * np.pi**2 * params.hbar)


def spin_current_3d_parallel(params: ParamSet, grad_mu=None) -> np.ndarray:
    _check_along_z(params)
    mu, m, tau = params.mu, params.m, params.tau
    k = fermi_momentum(mu, m)
    cB = _calB_mu(params)
    gm = np.zeros(3) if grad_mu is None else np.asarray(grad_mu, dtype=float)
    e3 = params.q * params.Efield[2] - gm[2]
    br = 3 * (mu + 2 * m) + 2 * m * tau**2 * cB**2 / (mu**2 + tau**2 * cB**2)
    return tau / (60 * np.pi**2 * params.hbar) * k**3 / mu**4 * br * cB * e3 * Z


def spin_current_3d_perpendicular(params: ParamSet, grad_mu=None) -> np.ndarray:
    _check_along_z(params)
    mu, m, tau, q = params.mu, params.m, params.tau, params.q
    k = fermi_momentum(mu, m)
    cB = _calB_mu(params)
    gm = np.zeros(3) if grad_mu is None else np.asarray(grad_mu, dtype=float)
    u = np.cross(params.Omega, params.x)
    E_rot = params.Efield + np.cross(u, params.B)
    e = q * E_rot + mu * np.cross(u, params.Omega) - gm
    e = e - Z * e[2]
    D = mu**2 + tau**2 * cB**2
    pref = tau / (60 * np.pi**2 * params.hbar) * (4 * m - mu) * k**3 / D**2 * cB
    return pref * ((1 - tau**2 / mu**2 * cB**2) * e - 2 * tau / mu * cB * np.cross(Z, e))


def b_coefficients(params: ParamSet) -> tuple[float, float]:
    mu, m, tau = params.mu, params.m, params.tau
    k = fermi_momentum(mu, m)
    cB = _calB_mu(params)
    D = mu**2 + tau**2 * cB**2
    X = (4 * m - mu) * k**3 / (60 * np.pi**2 * params.hbar)
    return (X * tau * cB / D**2 * (1 - tau**2 / mu**2 * cB**2),
            X * cB**2 / D**2 * 2 * tau**2 / mu)


def sigma_perp_3d(params: ParamSet) -> float:
    mu, m = params.mu, params.m
    k = fermi_momentum(mu, m)
    return (4 * m - mu) / (120 * np.pi**2 * params.hbar) * k**3 / mu**3
