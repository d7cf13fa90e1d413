"""Momentum-space densities and currents: direct quadrature and closed forms."""

from .bulk import (
    b_coefficients,
    radial_integrals,
    sigma_perp_3d,
    spin_current_3d_eq,
    spin_current_3d_noneq,
    spin_current_3d_parallel,
    spin_current_3d_perpendicular,
    spin_density_3d,
    unit_axis,
)
from .planar import (
    HallDecomposition,
    ValidityWarning,
    drive_2d,
    hall_decompose_2d,
    sigma_sh,
    sigma_sh1,
    spin_current_2d_eq,
    spin_current_2d_noneq,
    spin_density_2d,
)
from .quadrature import Integrand, QuadratureWarning, QuadResult, angular_nodes, quad_density
