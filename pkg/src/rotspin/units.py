"""SI inputs mapped onto a consistent c = 1 system with lengths in metres and energies in joules.

In this system

* mass enters as the rest energy m c^2 [J] and momentum as hbar k c [J],
* hbar becomes hbar c [J m],
* the charge stays in coulombs,
* B becomes c B, so that q B is a momentum per length,
* E keeps its SI value, so q E is a force [N],
* Omega becomes Omega / c [1/m] and tau becomes c tau [m],
* temperatures become k_B T [J].

A planar spin current comes out in J/m and a bulk one in J/m^2, the same
numbers as in SI. Charge-current equivalents use the factor 2e/hbar, which
maps a spin hbar/2 onto a charge e.
"""

from __future__ import annotations

import numpy as np
from scipy import constants as sc

from .model import ParamSet, mu_from_kf

__all__ = [
    "C",
    "HBAR",
    "HBAR_C",
    "ELEMENTARY_CHARGE",
    "ELECTRON_REST_ENERGY",
    "si_params",
    "spin_to_charge_current",
]

C = sc.c
HBAR = sc.hbar
HBAR_C = sc.hbar * sc.c
ELEMENTARY_CHARGE = sc.e
ELECTRON_REST_ENERGY = sc.m_e * sc.c**2


def si_params(*, mass_kg: float = sc.m_e, charge_C: float = sc.e, kF_per_m: float | None = None,
              mu_over_m: float | None = None, mu_J: float | None = None, tau_s: float = 1e-14,
              T_K: float = 0.0, B_T=(0.0, 0.0, 0.0), Omega_rad_s=(0.0, 0.0, 0.0),
              E_V_per_m=(0.0, 0.0, 0.0), x_m=(0.0, 0.0, 0.0), R_m: float = 0.0,
              branch: int = 1) -> ParamSet:
    """Build a ParamSet from SI quantities.

    Exactly one of ``kF_per_m``, ``mu_over_m`` or ``mu_J`` fixes the chemical potential.
    """
    given = [v is not None for v in (kF_per_m, mu_over_m, mu_J)]
    if sum(given) != 1:
        raise ValueError("give exactly one of kF_per_m, mu_over_m, mu_J")
    m = mass_kg * C**2
    if kF_per_m is not None:
        mu = mu_from_kf(kF_per_m, m, HBAR_C)
    elif mu_over_m is not None:
        mu = mu_over_m * m
    else:
        mu = mu_J
    return ParamSet(
        m=m,
        q=charge_C,
        hbar=HBAR_C,
        mu=mu,
        tau=tau_s * C,
        T=T_K * sc.k,
        B=C * np.asarray(B_T, dtype=float),
        Omega=np.asarray(Omega_rad_s, dtype=float) / C,
        Efield=np.asarray(E_V_per_m, dtype=float),
        x=np.asarray(x_m, dtype=float),
        R=R_m,
        branch=branch,
    )


def spin_to_charge_current(j_spin, charge_C: float = sc.e):
    """Charge-current equivalent of a spin current: multiply by 2 q / hbar."""
    return np.asarray(j_spin) * 2.0 * charge_C / HBAR
