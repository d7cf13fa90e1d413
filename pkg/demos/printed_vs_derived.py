"""Where the printed closed forms and direct quadrature part ways.

``rotspin.published`` keeps the closed forms exactly as printed, while the
library functions are derived again and checked against quadrature. This script
puts the two side by side for one configuration and states each relation.
"""

import numpy as np

from rotspin import ParamSet
from rotspin import published as pub
from rotspin.densities import (
    b_coefficients,
    hall_decompose_2d,
    sigma_perp_3d,
    spin_current_2d_noneq,
    spin_current_3d_eq,
    spin_density_3d,
)
from rotspin.densities.continuity import consistency_check

planar = ParamSet(m=1.0, q=0.7, hbar=0.6, mu=2.3, tau=1.3, B=[0, 0, 0.4], Omega=[0, 0, 0.03],
                  Efield=[0.2, 0.1, 0], x=[0.4, 0.3, 0], R=0.8)
bulk = planar.replace(Efield=[0.2, 0.1, 0.3], x=[0.4, 0.3, 0.2])
gm = np.array([0.05, -0.02, 0.0])


def show(name, printed, derived, relation):
    printed, derived = np.atleast_1d(printed), np.atleast_1d(derived)
    print(f"{name}")
    print(f"  printed  {np.array2string(printed, precision=6)}")
    print(f"  derived  {np.array2string(derived, precision=6)}")
    print(f"  {relation}\n")


show("2D consistency coefficient", pub.consistency_2d(planar), consistency_check(planar, 2),
     "opposite sign: the T=0 limit of df0/dE is -delta(E - mu)")
show("2D collision current", pub.spin_current_2d_noneq(planar, gm), spin_current_2d_noneq(planar, gm),
     "the part along the drive flips, the rotated part agrees")

h = hall_decompose_2d(planar)
a1p, a2p = pub.a_coefficients(planar)
show("Hall coefficients a1, a2", [a1p, a2p], [h.a1, h.a2],
     f"printed a1 = -hbar a1, printed a2 = hbar a2 (hbar = {planar.hbar})")
show("Ohm-like coefficient", pub.ohm_coefficient(planar), h.ohm_coeff, "opposite sign")
show("3D spin density (z axis)", pub.spin_density_3d(bulk), spin_density_3d(bulk),
     "the magnetic-field bracket differs, the rotation term agrees")
show("3D equilibrium current (z axis)", pub.spin_current_3d_eq(bulk), spin_current_3d_eq(bulk),
     "the printed centrifugal term is twice the quadrature value")

r = (4 * bulk.m - bulk.mu) / (bulk.q * (4 * bulk.m + bulk.mu))
show("b coefficients", pub.b_coefficients(bulk), b_coefficients(bulk),
     f"printed b1 = -r b1, printed b2 = r b2 with r = (4m - mu)/(q(4m + mu)) = {r:.6f}")
show("sigma_perp", pub.sigma_perp_3d(bulk), sigma_perp_3d(bulk), "printed = r times derived")
