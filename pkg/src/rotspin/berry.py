"""Berry connection and curvature of a massive Dirac branch, and the projected Hamiltonian."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ParamSet, dispersion
from .spinalg import LEVI_CIVITA, MatrixVector3, PauliCoeff, pauli_commutator

__all__ = [
    "BerryData",
    "berry_connection",
    "berry_curvature",
    "curvature_fd_oracle",
    "semiclassical_hamiltonian",
    "berry_data",
]


@dataclass(frozen=True)
class BerryData:
    A: MatrixVector3
    G: MatrixVector3
    at: np.ndarray


def berry_connection(p, m: float, hbar: float) -> MatrixVector3:
    """A = hbar (sigma x p) / (2 E (E + m)).

    Component i is ``eps_ijk sigma_j p_k`` times the prefactor, so its sigma_j
    coefficient is ``eps_ijk p_k``.
    """
    p = np.asarray(p, dtype=float)
    E = dispersion(p, m)
    pref = hbar / (2.0 * E * (E + m))
    cv = np.einsum("ijk,...k->...ij", LEVI_CIVITA, p) * pref[..., None, None]
    return MatrixVector3(np.zeros(p.shape), cv)


def berry_curvature(p, m: float, hbar: float) -> MatrixVector3:
    """G = (hbar m / 2E^3) (sigma + p (sigma . p) / (m (m + E)))."""
    p = np.asarray(p, dtype=float)
    E = dispersion(p, m)
    pref = hbar * m / (2.0 * E**3)
    tensor = np.eye(3) + p[..., :, None] * p[..., None, :] / (m * (m + E))[..., None, None]
    return MatrixVector3(np.zeros(p.shape), tensor * pref[..., None, None])


def curvature_fd_oracle(p, m: float, hbar: float, h: float | None = None) -> MatrixVector3:
    """Curvature rebuilt from its definition with central differences.

    G_ij = dA_j/dp_i - dA_i/dp_j + (i/hbar) [A_i, A_j] and G_k = eps_kij G_ij / 2.
    Works for a single momentum.
    """
    p = np.asarray(p, dtype=float).reshape(3)
    if h is None:
        h = 1e-5 * max(float(np.linalg.norm(p)), m)
    # dA[i] = dA/dp_i as a MatrixVector3 over the component index
    dA = []
    for i in range(3):
        step = np.zeros(3)
        step[i] = h
        ap = berry_connection(p + step, m, hbar)
        am = berry_connection(p - step, m, hbar)
        dA.append((ap - am) / (2.0 * h))
    A = berry_connection(p, m, hbar)
    c0 = np.zeros(3, dtype=complex)
    cv = np.zeros((3, 3), dtype=complex)
    for k in range(3):
        i, j = (k + 1) % 3, (k + 2) % 3
        Gij = (dA[i].component(j) - dA[j].component(i)
               + pauli_commutator(A.component(i), A.component(j)) * (1j / hbar))
        c0[k] = Gij.c0
        cv[k] = Gij.cv
    return MatrixVector3(c0, cv)


def semiclassical_hamiltonian(p, params: ParamSet) -> PauliCoeff:
    """H = E [1 - s G . (q B + E Omega)] with s the branch sign."""
    p = np.asarray(p, dtype=float)
    E = dispersion(p, params.m)
    G = berry_curvature(p, params.m, params.hbar)
    b = params.q * params.B + E[..., None] * params.Omega
    return PauliCoeff.scalar(E) - G.dot_real(b) * (params.branch * E)


def berry_data(p, m: float, hbar: float) -> BerryData:
    p = np.asarray(p, dtype=float)
    return BerryData(A=berry_connection(p, m, hbar), G=berry_curvature(p, m, hbar), at=p)
