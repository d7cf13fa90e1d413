"""Phase-space kinematics in the rotating frame.

Effective force, canonical velocity, the Pfaffian measure and the
measure-weighted velocity and force. Spin-valued quantities are carried as
``PauliCoeff`` / ``MatrixVector3``; whenever two spin-valued factors meet, the
symmetrized product is used, which keeps the result Hermitian and only affects
terms of second order in hbar.

Two switches control the level of approximation:

``mode``
    ``"simplified"`` uses nu = p/E, ``"full"`` keeps the hbar-linear
    canonical velocity in its standard closed form, ``"gradient"`` uses the
    exact momentum gradient of the projected Hamiltonian.
``energy``
    ``"bare"`` uses the branch energy E wherever the spin-dependent energy
    appears, ``"corrected"`` uses the projected Hamiltonian instead.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .berry import berry_curvature, semiclassical_hamiltonian
from .model import ParamSet, dispersion
from .spinalg import LEVI_CIVITA, MatrixVector3, PauliCoeff

__all__ = [
    "OMEGA_VELOCITY_FACTOR",
    "RotationWarning",
    "PhasePoint",
    "KinematicFields",
    "branch_energy",
    "effective_force",
    "canonical_velocity",
    "pfaffian",
    "vel_weighted",
    "force_weighted",
    "kinematic_fields",
    "symplectic_matrix_6x6",
    "pfaffian_skew",
    "pfaffian_6x6_oracle",
]

# Coefficient of E Omega in the last term of the full canonical velocity.
# With 1 the velocity is exactly the covariant momentum derivative of the
# projected Hamiltonian.
OMEGA_VELOCITY_FACTOR = 1.0

_ROTATION_LIMIT = 0.1


class RotationWarning(UserWarning):
    """Raised when |Omega x x| is not small compared with the speed of light."""


@dataclass(frozen=True)
class PhasePoint:
    """Position ``x`` (shape (3,)) and momentum ``p`` (shape (..., 3))."""

    x: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float))
        object.__setattr__(self, "p", np.asarray(self.p, dtype=float))

    def check_rotation(self, Omega) -> float:
        speed = float(np.max(np.linalg.norm(np.cross(Omega, self.x), axis=-1), initial=0.0))
        if speed > _ROTATION_LIMIT:
            warnings.warn(f"|Omega x x| = {speed:.3g} is not small; the expansion may fail",
                          RotationWarning, stacklevel=3)
        return speed


@dataclass(frozen=True)
class KinematicFields:
    e: MatrixVector3
    nu: MatrixVector3
    pf: PauliCoeff
    xdot_w: MatrixVector3
    pdot_w: MatrixVector3


def branch_energy(p, params: ParamSet, energy: str = "bare") -> PauliCoeff:
    """The energy multiplying Omega in the force and in calB."""
    if energy == "bare":
        return PauliCoeff.scalar(dispersion(p, params.m))
    if energy == "corrected":
        return semiclassical_hamiltonian(p, params)
    raise ValueError(f"energy must be 'bare' or 'corrected', got {energy!r}")


def effective_force(params: ParamSet, E, x=None) -> np.ndarray:
    """e = q E + (Omega x x) x (q B + E Omega) for an ordinary energy ``E``.

    Broadcasts over ``E``; ``x`` defaults to ``params.x``.
    """
    E = np.asarray(E, dtype=float)
    x = params.x if x is None else np.asarray(x, dtype=float)
    u = np.cross(params.Omega, x)
    return (params.q * params.Efield + np.cross(u, params.q * params.B)
            + E[..., None] * np.cross(u, params.Omega))


def _force(x, params: ParamSet, calE: PauliCoeff) -> MatrixVector3:
    u = np.cross(params.Omega, x)
    fixed = params.q * params.Efield + np.cross(u, params.q * params.B)
    return MatrixVector3.outer(np.cross(u, params.Omega), calE) + fixed


def _calB(params: ParamSet, calE: PauliCoeff) -> MatrixVector3:
    return MatrixVector3.outer(2.0 * params.Omega, calE) + params.q * params.B


def canonical_velocity(p, params: ParamSet, mode: str = "simplified") -> MatrixVector3:
    """Canonical velocity nu.

    ``simplified``: nu = p/E.
    ``full``: nu = (p/E)[1 + 2s G.(qB + E Omega/2)] - s (hbar/2E^3)(qB + k E Omega)(sigma.p)
    with k = ``OMEGA_VELOCITY_FACTOR``.
    ``gradient``: nu = dH/dp with H = E[1 - s G.(qB + E Omega)], differentiated exactly.
    It shares the p(sigma.b) terms with ``full`` but has hbar/(2E^2(E+m)) in place of
    hbar/2E^3 in front of b(sigma.p) and an extra sigma (p.b) term.
    """
    p = np.asarray(p, dtype=float)
    E = dispersion(p, params.m)
    v = p / E[..., None]
    if mode == "simplified":
        return MatrixVector3.from_real(v)
    if mode == "gradient":
        return _hamiltonian_gradient(p, E, params)
    if mode != "full":
        raise ValueError(f"mode must be 'simplified', 'full' or 'gradient', got {mode!r}")
    s = params.branch
    G = berry_curvature(p, params.m, params.hbar)
    scal = PauliCoeff.scalar(np.ones_like(E)) + G.dot_real(
        params.q * params.B + 0.5 * E[..., None] * params.Omega) * (2.0 * s)
    lead = MatrixVector3.outer(v, scal)
    w = (params.q * params.B + OMEGA_VELOCITY_FACTOR * E[..., None] * params.Omega)
    w = w * (s * params.hbar / (2.0 * E**3))[..., None]
    return lead - MatrixVector3.outer(w, PauliCoeff.vector(p))


def _gradient_parts(p, E, params: ParamSet):
    """Real coefficients of dH/dp = p/E - s d(E G.b)/dp, b = qB + E Omega.

    Returns (a, c, d, e) such that
    d(E G.b)/dp_j = p_j sigma.a + c_j (sigma.p) + d sigma_j,
    with ``a`` and ``c`` vectors and ``d`` a scalar (arrays over leading axes).
    """
    m, hbar = params.m, params.hbar
    b = params.q * params.B + E[..., None] * params.Omega
    pb = np.sum(p * b, axis=-1)
    pW = np.sum(p * params.Omega, axis=-1)
    mE = m * (m + E)
    a = (-hbar * m / E**4)[..., None] * b + (hbar * m / (2 * E**3))[..., None] * params.Omega
    c = (hbar / (2 * E**2 * (m + E)))[..., None] * b
    # p_j (sigma.p) terms
    pp = (-hbar / (E**4 * (m + E)) * pb + hbar * m / (2 * E**3) * pW / mE
          - hbar / (2 * E**3 * (m + E) ** 2) * pb)
    d = hbar / (2 * E**2 * (m + E)) * pb
    return a, c, pp, d


def _hamiltonian_gradient(p, E, params: ParamSet) -> MatrixVector3:
    s = params.branch
    a, c, pp, d = _gradient_parts(p, E, params)
    sig_p = PauliCoeff.vector(p)
    out = MatrixVector3.from_real(p / E[..., None])
    out = out - MatrixVector3.outer(p, PauliCoeff.vector(a)) * s
    out = out - MatrixVector3.outer(c, sig_p) * s
    out = out - MatrixVector3.outer(p, sig_p * pp) * s
    out = out - MatrixVector3.sigma(np.shape(E)).scale(PauliCoeff.scalar(d)) * s
    return out


def _prepare(xp: PhasePoint, params: ParamSet, mode: str, energy: str):
    xp.check_rotation(params.Omega)
    p = xp.p
    calE = branch_energy(p, params, energy)
    G = berry_curvature(p, params.m, params.hbar)
    nu = canonical_velocity(p, params, mode)
    e = _force(xp.x, params, calE)
    b = _calB(params, calE)
    return G, nu, e, b


def pfaffian(xp: PhasePoint, params: ParamSet, mode: str = "simplified",
             energy: str = "bare") -> PauliCoeff:
    """omega^(1/2) = 1 + s G.calB - nu.(x x Omega) - s (nu.G)(q B.(x x Omega))."""
    G, nu, _, b = _prepare(xp, params, mode, energy)
    s = params.branch
    w = np.cross(xp.x, params.Omega)
    qBw = float(params.q * params.B @ w)
    return (1.0 + G.dot(b) * s - nu.dot_real(w) - nu.dot(G) * (s * qBw))


def vel_weighted(xp: PhasePoint, params: ParamSet, mode: str = "simplified",
                 energy: str = "bare") -> MatrixVector3:
    """(x_dot omega^(1/2)).

    nu (1 - u^2/2) + s e x G + s (nu.G) calB (1 - u^2/2) + s (nu.G) [(x x Omega) x e]
    with u = Omega x x.
    """
    G, nu, e, b = _prepare(xp, params, mode, energy)
    s = params.branch
    w = np.cross(xp.x, params.Omega)
    damp = 1.0 - 0.5 * float(w @ w)
    nuG = nu.dot(G)
    return (nu * damp + e.cross(G) * s + b.scale(nuG) * (s * damp)
            + e.rcross_real(w).scale(nuG) * s)


def force_weighted(xp: PhasePoint, params: ParamSet, mode: str = "simplified",
                   energy: str = "bare") -> MatrixVector3:
    """(omega^(1/2) p_dot) = e + nu x calB (1 - u^2/2) + s G (e.calB) - [(x x Omega) x e] x nu."""
    G, nu, e, b = _prepare(xp, params, mode, energy)
    s = params.branch
    w = np.cross(xp.x, params.Omega)
    damp = 1.0 - 0.5 * float(w @ w)
    return e + nu.cross(b) * damp + G.scale(e.dot(b)) * s - e.rcross_real(w).cross(nu)


def kinematic_fields(xp: PhasePoint, params: ParamSet, mode: str = "simplified",
                     energy: str = "bare") -> KinematicFields:
    G, nu, e, b = _prepare(xp, params, mode, energy)
    return KinematicFields(
        e=e,
        nu=nu,
        pf=pfaffian(xp, params, mode, energy),
        xdot_w=vel_weighted(xp, params, mode, energy),
        pdot_w=force_weighted(xp, params, mode, energy),
    )


# Scalarized 6x6 symplectic form -------------------------------------------------

def symplectic_matrix_6x6(xp: PhasePoint, params: ParamSet, spin_axis,
                          mode: str = "simplified", energy: str = "bare") -> np.ndarray:
    """Antisymmetric 6x6 matrix of the extended two-form with sigma replaced by ``spin_axis``.

    Rows and columns are ordered (x, p). Built from ordinary vectors only, so it
    is independent of the Pauli-coefficient code path. Single phase point.
    """
    n = np.asarray(spin_axis, dtype=float).reshape(3)
    if abs(np.linalg.norm(n) - 1.0) > 1e-12:
        raise ValueError("spin_axis must be a unit vector")
    p = xp.p.reshape(3)
    x = xp.x.reshape(3)
    m, q, hbar, s = params.m, params.q, params.hbar, params.branch
    E = float(np.sqrt(p @ p + m * m))
    G = hbar * m / (2.0 * E**3) * (n + p * (n @ p) / (m * (m + E)))
    if energy == "bare":
        calE = E
    elif energy == "corrected":
        calE = E * (1.0 - s * G @ (q * params.B + E * params.Omega))
    else:
        raise ValueError(f"energy must be 'bare' or 'corrected', got {energy!r}")
    if mode == "simplified":
        nu = p / E
    elif mode == "full":
        nu = (p / E * (1.0 + 2.0 * s * G @ (q * params.B + 0.5 * E * params.Omega))
              - s * hbar / (2.0 * E**3)
              * (q * params.B + OMEGA_VELOCITY_FACTOR * E * params.Omega) * (n @ p))
    elif mode == "gradient":
        # central differences of the scalar energy E[1 - s G_n . b], an independent route
        def energy_n(k):
            Ek = np.sqrt(k @ k + m * m)
            Gk = hbar * m / (2.0 * Ek**3) * (n + k * (n @ k) / (m * (m + Ek)))
            return Ek * (1.0 - s * Gk @ (q * params.B + Ek * params.Omega))
        h = 1e-4 * max(float(np.sqrt(p @ p)), m)
        nu = np.array([(energy_n(p + h * u) - energy_n(p - h * u)) / (2 * h) for u in np.eye(3)])
    else:
        raise ValueError(f"mode must be 'simplified', 'full' or 'gradient', got {mode!r}")
    b = q * params.B + 2.0 * calE * params.Omega
    w = np.cross(x, params.Omega)
    M = np.zeros((6, 6))
    M[:3, :3] = LEVI_CIVITA @ b
    M[:3, 3:] = -np.eye(3) + np.outer(w, nu)
    M[3:, :3] = np.eye(3) - np.outer(nu, w)
    M[3:, 3:] = -s * (LEVI_CIVITA @ G)
    return M


def pfaffian_skew(A: np.ndarray) -> float:
    """Pfaffian of a real antisymmetric matrix by Parlett-Reid elimination with pivoting."""
    A = np.array(A, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("square matrix required")
    if n % 2:
        return 0.0
    scale = max(1.0, float(np.abs(A).max()))
    if np.abs(A + A.T).max() > 1e-12 * scale:
        raise ValueError("matrix is not antisymmetric")
    result = 1.0
    for k in range(0, n - 1, 2):
        piv = k + 1 + int(np.argmax(np.abs(A[k + 1:, k])))
        if piv != k + 1:
            A[[k + 1, piv], :] = A[[piv, k + 1], :]
            A[:, [k + 1, piv]] = A[:, [piv, k + 1]]
            result = -result
        if A[k + 1, k] == 0.0:
            return 0.0
        result *= A[k, k + 1]
        if k + 2 < n:
            tau = A[k, k + 2:] / A[k, k + 1]
            # eliminate using the Gauss vector of column k
            A[k + 2:, k + 2:] += np.outer(tau, A[k + 2:, k + 1]) - np.outer(A[k + 2:, k + 1], tau)
    return float(result)


def pfaffian_6x6_oracle(xp: PhasePoint, params: ParamSet, spin_axis,
                        mode: str = "simplified", energy: str = "bare") -> float:
    """Numerical Pfaffian of the scalarized 6x6 two-form at one phase point."""
    M = symplectic_matrix_6x6(xp, params, spin_axis, mode, energy)
    scale = max(1.0, float(np.abs(M).max()))
    if np.abs(M + M.T).max() > 1e-12 * scale:
        raise RuntimeError("symplectic matrix construction is not antisymmetric")
    return pfaffian_skew(M)
