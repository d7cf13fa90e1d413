"""Bulk spin density and spin currents, closed form against Fermi-surface quadrature.

For a configuration with B and Omega along z, evaluates the spin density, the
equilibrium current and the collision current for a tilted spin axis. Each
value is recomputed by integrating its defining momentum integral at T = 0 and
with a small thermal smearing.
"""

import time

import numpy as np

from rotspin import ParamSet
from rotspin.densities import (
    Integrand,
    quad_density,
    sigma_perp_3d,
    spin_current_3d_eq,
    spin_current_3d_noneq,
    spin_density_3d,
)

P = ParamSet(m=1.0, q=0.8, hbar=0.7, mu=2.0, tau=1.5, B=[0, 0, 0.5], Omega=[0, 0, 0.04],
             Efield=[0.1, -0.05, 0.2], x=[0.3, 0.2, -0.1])
axis = np.array([1.0, 1.0, 2.0]) / np.sqrt(6)
grad_mu = np.array([0.02, 0.0, -0.03])

cases = [
    ("spin density", spin_density_3d(P, axis), Integrand("density", axis, "f0", 3)),
    ("equilibrium current", spin_current_3d_eq(P, axis), Integrand("current", axis, "f0", 3)),
    ("collision current", spin_current_3d_noneq(P, axis, grad_mu), Integrand("current", axis, "f1", 3)),
]

for name, closed, integrand in cases:
    t0 = time.perf_counter()
    q0 = quad_density(integrand, P, grad_mu=grad_mu)
    qT = quad_density(integrand, P, T_smear=1e-4 * P.mu, grad_mu=grad_mu)
    dt = time.perf_counter() - t0
    r0 = np.max(np.abs(np.atleast_1d(q0 - closed))) / np.max(np.abs(np.atleast_1d(closed)))
    rT = np.max(np.abs(np.atleast_1d(qT - closed))) / np.max(np.abs(np.atleast_1d(closed)))
    print(f"{name}:")
    print(f"  closed form  {np.array2string(np.atleast_1d(closed), precision=6)}")
    print(f"  T=0 quad     rel. difference {r0:.1e}")
    print(f"  T=1e-4 mu    rel. difference {rT:.1e}   ({dt:.2f} s)")

print(f"\nperpendicular Hall coefficient sigma_perp = {sigma_perp_3d(P):.6e}")
