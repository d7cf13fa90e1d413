"""Spin densities and spin currents of massive Dirac fermions in a rotating frame.

Semiclassical kinetic theory with Berry curvature: Pauli-basis algebra,
phase-space kinematics, the relaxation-time Boltzmann solution and the
momentum integrals that give densities, currents and Hall coefficients.
"""

from .berry import berry_connection, berry_curvature, semiclassical_hamiltonian
from .kinematics import PhasePoint, canonical_velocity, force_weighted, pfaffian, vel_weighted
from .model import ParamSet, derived_fields, dispersion, effective_bfield
from .spinalg import MatrixVector3, PauliCoeff
from .transport import ChiSolution, SurfaceDelta, f0, f1, solve_chi

__all__ = [
    "ParamSet",
    "PauliCoeff",
    "MatrixVector3",
    "PhasePoint",
    "ChiSolution",
    "SurfaceDelta",
    "dispersion",
    "effective_bfield",
    "derived_fields",
    "berry_connection",
    "berry_curvature",
    "semiclassical_hamiltonian",
    "canonical_velocity",
    "pfaffian",
    "vel_weighted",
    "force_weighted",
    "solve_chi",
    "f0",
    "f1",
]

__version__ = "0.1.0"
