"""Physical configuration, dispersion and the derived field combinations.

Units are natural with c = 1 while hbar is kept as an explicit parameter, so
that the order in hbar of every term stays visible. Energies, momenta, masses
and fields only need to be mutually consistent; ``rotspin.units`` maps SI
inputs onto one such consistent system.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ParamSet",
    "DerivedFields",
    "SCALAR_FIELDS",
    "dispersion",
    "momentum_at",
    "mu_from_kf",
    "fermi_momentum",
    "effective_bfield",
    "derived_fields",
    "planar_position",
    "is_parallel",
]

_VECTOR_FIELDS = ("B", "Omega", "Efield", "x")
SCALAR_FIELDS = ("m", "q", "hbar", "mu", "tau", "T", "R")


def _frozen_vector(v) -> np.ndarray:
    arr = np.array(v, dtype=float).reshape(3)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ParamSet:
    """One physical configuration.

    Attributes
    ----------
    m : rest energy (mass with c = 1), must be positive
    q : charge
    hbar : reduced Planck constant, positive
    mu : chemical potential (energy)
    tau : relaxation time, positive
    T : temperature in energy units, 0 allowed
    B, Omega, Efield : magnetic field, angular velocity, electric field
    x : position, used by the 3D expressions
    R : radius of the circle in the planar geometry
    branch : sign of the energy branch, +1 for particles, -1 for antiparticles
    """

    m: float = 1.0
    q: float = 1.0
    hbar: float = 1.0
    mu: float = 2.0
    tau: float = 1.0
    T: float = 0.0
    B: np.ndarray = field(default_factory=lambda: np.zeros(3))
    Omega: np.ndarray = field(default_factory=lambda: np.zeros(3))
    Efield: np.ndarray = field(default_factory=lambda: np.zeros(3))
    x: np.ndarray = field(default_factory=lambda: np.zeros(3))
    R: float = 1.0
    branch: int = 1

    def __post_init__(self):
        for name in _VECTOR_FIELDS:
            object.__setattr__(self, name, _frozen_vector(getattr(self, name)))
        for name in SCALAR_FIELDS:
            object.__setattr__(self, name, float(getattr(self, name)))
        if not self.m > 0:
            raise ValueError(f"mass must be positive, got m={self.m}")
        if not self.hbar > 0:
            raise ValueError(f"hbar must be positive, got {self.hbar}")
        if not self.tau > 0:
            raise ValueError(f"tau must be positive, got {self.tau}")
        if not self.T >= 0:
            raise ValueError(f"temperature must be non-negative, got {self.T}")
        if self.branch not in (1, -1):
            raise ValueError(f"branch must be +1 or -1, got {self.branch}")
        object.__setattr__(self, "branch", int(self.branch))

    def replace(self, **changes) -> "ParamSet":
        return dataclasses.replace(self, **changes)

    @property
    def kF(self) -> float:
        """Fermi momentum, zero for an empty band."""
        return fermi_momentum(self.mu, self.m)

    def as_dict(self) -> dict:
        out = {}
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            out[f.name] = v.tolist() if isinstance(v, np.ndarray) else v
        return out

    def __eq__(self, other):
        if not isinstance(other, ParamSet):
            return NotImplemented
        return self.as_dict() == other.as_dict()

    def __hash__(self):
        return hash(tuple((k, tuple(v) if isinstance(v, list) else v)
                          for k, v in self.as_dict().items()))


@dataclass(frozen=True)
class DerivedFields:
    """Field combinations entering the relaxation-time solution at energy ``E``.

    ``calB = q B + 2 E Omega``, ``g = tau / E``, ``d2 = g^2 calB^2`` and
    ``e_mu`` is the effective force minus the chemical-potential gradient.
    """

    E: np.ndarray
    calB: np.ndarray
    g: np.ndarray
    d2: np.ndarray
    e_mu: np.ndarray


def dispersion(p, m: float) -> np.ndarray:
    """E = sqrt(p^2 + m^2) over the last axis of ``p``."""
    p = np.asarray(p, dtype=float)
    return np.sqrt(np.einsum("...i,...i->...", p, p) + m * m)


def momentum_at(E, m: float) -> np.ndarray:
    """Magnitude of momentum on the shell of energy E >= m."""
    E = np.asarray(E, dtype=float)
    return np.sqrt(np.maximum(E * E - m * m, 0.0))


def mu_from_kf(kF: float, m: float, hbar: float) -> float:
    """Chemical potential for Fermi wavenumber ``kF``: sqrt((hbar kF)^2 + m^2)."""
    if kF < 0:
        raise ValueError("Fermi wavenumber must be non-negative")
    return float(np.hypot(hbar * kF, m))


def fermi_momentum(mu: float, m: float) -> float:
    return float(np.sqrt(max(mu * mu - m * m, 0.0)))


def effective_bfield(params: ParamSet, E) -> np.ndarray:
    """calB = q B + 2 E Omega, broadcasting over ``E``."""
    E = np.asarray(E, dtype=float)
    return params.q * params.B + 2.0 * E[..., None] * params.Omega


def derived_fields(params: ParamSet, E, x=None, grad_mu=None) -> DerivedFields:
    """Evaluate calB, g, d2 and e_mu at energy ``E`` and position ``x``.

    The force uses the bare energy, e = q E + (Omega x x) x (q B + E Omega).
    """
    E = np.asarray(E, dtype=float)
    x = params.x if x is None else np.asarray(x, dtype=float)
    grad_mu = np.zeros(3) if grad_mu is None else np.asarray(grad_mu, dtype=float)
    calB = effective_bfield(params, E)
    g = params.tau / E
    d2 = g * g * np.einsum("...i,...i->...", calB, calB)
    u = np.cross(params.Omega, x)
    e = (params.q * params.Efield + np.cross(u, params.q * params.B)
         + E[..., None] * np.cross(u, params.Omega))
    return DerivedFields(E=E, calB=calB, g=g, d2=d2, e_mu=e - grad_mu)


def planar_position(params: ParamSet) -> tuple[np.ndarray, np.ndarray]:
    """Radial unit vector and position R rho_hat of the planar circular geometry.

    The direction of rho_hat is taken from the in-plane part of ``params.x``;
    the x axis is used when that is zero.
    """
    xy = np.array([params.x[0], params.x[1], 0.0])
    n = np.linalg.norm(xy)
    rho_hat = xy / n if n > 0 else np.array([1.0, 0.0, 0.0])
    return rho_hat, params.R * rho_hat


def is_parallel(a, b, rtol: float = 1e-12) -> bool:
    """True when the vectors are parallel, antiparallel, or either vanishes."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(np.linalg.norm(np.cross(a, b))) <= rtol * float(np.linalg.norm(a) * np.linalg.norm(b))
