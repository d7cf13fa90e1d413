"""Direct momentum-space integration of the spin and number densities and currents.

This path makes no use of the closed forms. The angular integral is done with
rules that are exact for the trigonometric polynomials appearing here: a
uniform grid in the azimuth and Gauss-Legendre nodes in cos(theta). The radial
integral is adaptive (``scipy.integrate.quad_vec``). At zero temperature a
``df0/dE`` factor collapses the radial integral onto the Fermi surface.

Spin traces are kept to first order in hbar. Every spin-dependent factor here
is proportional to hbar, so this means dropping products of two sigma-vector
parts. The result is exact as long as the velocity is p/E and the energy is
not corrected.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad_vec

from ..kinematics import PhasePoint, pfaffian, vel_weighted
from ..model import ParamSet, dispersion, fermi_momentum, momentum_at, planar_position
from ..spinalg import MatrixVector3, PauliCoeff
from ..transport import f0, f1

__all__ = ["Integrand", "QuadratureWarning", "QuadResult", "quad_density", "angular_nodes"]

_SMEAR_WIDTH = 40.0


class QuadratureWarning(UserWarning):
    """The requested tolerance was not reached."""


@dataclass(frozen=True)
class Integrand:
    """Which momentum integral to evaluate.

    kind : ``"density"`` (measure weight) or ``"current"`` (weighted velocity)
    axis : spin weight sigma . axis; ``None`` gives the number density or current
    distribution : ``"f0"`` or ``"f1"``
    dimension : 2 (p_z = 0, z = 0) or 3
    spin_factor : include hbar/2 with the spin weight
    """

    kind: str = "density"
    axis: tuple | None = None
    distribution: str = "f0"
    dimension: int = 3
    spin_factor: bool = True

    def __post_init__(self):
        if self.kind not in ("density", "current"):
            raise ValueError(f"kind must be 'density' or 'current', got {self.kind!r}")
        if self.distribution not in ("f0", "f1"):
            raise ValueError(f"distribution must be 'f0' or 'f1', got {self.distribution!r}")
        if self.dimension not in (2, 3):
            raise ValueError(f"dimension must be 2 or 3, got {self.dimension!r}")
        if self.axis is not None:
            a = np.asarray(self.axis, dtype=float)
            if a.shape == ():
                a = np.eye(3)[int(a)]
            a = a / np.linalg.norm(a)
            object.__setattr__(self, "axis", tuple(float(c) for c in a))


@dataclass(frozen=True)
class QuadResult:
    value: np.ndarray
    error: float
    evaluations: int


def angular_nodes(dimension: int, n_theta: int = 16, n_phi: int = 32):
    """Unit vectors and weights summing to the full solid angle (2 pi or 4 pi)."""
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    if dimension == 2:
        dirs = np.stack([np.cos(phi), np.sin(phi), np.zeros_like(phi)], axis=-1)
        return dirs, np.full(n_phi, 2.0 * np.pi / n_phi)
    ct, wt = np.polynomial.legendre.leggauss(n_theta)
    st = np.sqrt(1.0 - ct**2)
    dirs = np.stack([st[:, None] * np.cos(phi), st[:, None] * np.sin(phi),
                     np.broadcast_to(ct[:, None], (n_theta, n_phi))], axis=-1).reshape(-1, 3)
    w = (wt[:, None] * np.full(n_phi, 2.0 * np.pi / n_phi)).reshape(-1)
    return dirs, w


def _linear_trace(W, F, axis):
    """First-order spin trace Tr[(sigma . axis) W F], or Tr[W F] without an axis.

    ``W`` is a PauliCoeff (shape N) or MatrixVector3 (shape N); ``F`` a
    PauliCoeff or None (meaning the identity).
    """
    if isinstance(W, MatrixVector3):
        W0, Wv = W.c0, W.cv  # (N,3), (N,3,3)
    else:
        W0, Wv = W.c0[:, None], W.cv[:, None, :]
    if F is None:
        F0 = np.ones(W0.shape[0])
        Fv = np.zeros((W0.shape[0], 3))
    else:
        F0, Fv = F.c0, F.cv
    if axis is None:
        out = 2.0 * W0 * F0[:, None]
    else:
        a = np.asarray(axis)
        out = 2.0 * (W0 * (Fv @ a)[:, None] + F0[:, None] * (Wv @ a))
    return out


def _position(params: ParamSet, dimension: int) -> np.ndarray:
    if dimension == 2:
        return planar_position(params)[1]
    return params.x


class _Shell:
    """Angular integral of the traced integrand on a shell |p| = k."""

    def __init__(self, integrand: Integrand, params: ParamSet, grad_mu, dmu_dt,
                 n_theta: int, n_phi: int):
        self.integrand = integrand
        self.params = params
        self.grad_mu = grad_mu
        self.dmu_dt = dmu_dt
        self.dirs, self.weights = angular_nodes(integrand.dimension, n_theta, n_phi)
        self.x = _position(params, integrand.dimension)
        if integrand.distribution == "f1":
            # f1 is already linear in the drive, so the weight is taken at zero drive
            self.weight_params = params.replace(Efield=np.zeros(3), x=np.zeros(3))
            self.weight_x = np.zeros(3)
        else:
            self.weight_params = params
            self.weight_x = self.x
        self.calls = 0
        self.max_imag = 0.0

    def __call__(self, k: float) -> np.ndarray:
        self.calls += 1
        p = k * self.dirs
        it = self.integrand
        xp_w = PhasePoint(self.weight_x, p)
        if it.kind == "density":
            W = pfaffian(xp_w, self.weight_params)
        else:
            W = vel_weighted(xp_w, self.weight_params)
        F = None
        if it.distribution == "f1":
            F = f1(PhasePoint(self.x, p), self.params, self.grad_mu, self.dmu_dt)
        tr = _linear_trace(W, F, it.axis)
        self.max_imag = max(self.max_imag, float(np.max(np.abs(tr.imag), initial=0.0)))
        return self.weights @ tr.real


def quad_density(integrand: Integrand, params: ParamSet, T_smear: float | None = None,
                 grad_mu=None, dmu_dt: float = 0.0, rtol: float = 1e-8,
                 n_theta: int = 16, n_phi: int = 32, full_output: bool = False):
    """Integrate ``integrand`` over momentum space.

    Returns a scalar for densities and a 3-vector for currents. ``T_smear``
    overrides the temperature used in f0 and df0/dE; ``None`` uses ``params.T``.
    At zero temperature only particles contribute. With ``full_output`` a
    ``QuadResult`` is returned instead.
    """
    T = params.T if T_smear is None else float(T_smear)
    if T < 0:
        raise ValueError("T_smear must be non-negative")
    d = integrand.dimension
    m, mu = params.m, params.mu
    gm = np.zeros(3) if grad_mu is None else np.asarray(grad_mu, dtype=float)
    shell = _Shell(integrand, params, gm, dmu_dt, n_theta, n_phi)
    if params.branch != 1 and T == 0:
        val, err = np.zeros(3), 0.0
    elif integrand.distribution == "f0":
        kF = fermi_momentum(mu, m)
        if T == 0:
            if kF == 0:
                val, err = np.zeros(3), 0.0
            else:
                val, err = quad_vec(lambda k: k ** (d - 1) * shell(k), 0.0, kF,
                                    epsrel=rtol * 1e-2, epsabs=0.0)
        else:
            kmax = float(momentum_at(max(mu, m) + _SMEAR_WIDTH * T, m))
            pts = [kF] if 0 < kF < kmax else None

            def radial(k):
                occ = f0(dispersion(np.array([k, 0.0, 0.0]), m), mu, T, params.branch)
                return k ** (d - 1) * occ * shell(k)

            val, err = quad_vec(radial, 0.0, kmax, epsrel=rtol * 1e-2, epsabs=0.0, points=pts)
    else:
        if T == 0:
            kF = fermi_momentum(mu, m)
            # integral of d^d p (-delta(E - mu)) F = -mu k^(d-2) times the shell integral
            val = -mu * kF ** (d - 2) * shell(kF) if kF > 0 else np.zeros(3)
            err = 0.0
        else:
            lo = max(m, mu - _SMEAR_WIDTH * T)
            hi = max(mu, m) + _SMEAR_WIDTH * T

            def energy_integrand(E):
                k = float(momentum_at(E, m))
                occ = f0(E, mu, T, params.branch)
                dfe = -occ * (1.0 - occ) / T
                return E * k ** (d - 2) * dfe * shell(k)

            pts = [mu] if lo < mu < hi else None
            val, err = quad_vec(energy_integrand, lo, hi, epsrel=rtol * 1e-2, epsabs=0.0, points=pts)
    val = np.asarray(val, dtype=float)
    pref = 1.0 / (2.0 * np.pi * params.hbar) ** d
    if integrand.axis is not None and integrand.spin_factor:
        pref *= 0.5 * params.hbar
    val = pref * val
    err = pref * float(err)
    scale = max(float(np.max(np.abs(val), initial=0.0)), 1e-300)
    if shell.max_imag > 1e-12 * max(1.0, scale / pref):
        raise ValueError(f"spin trace has an imaginary part {shell.max_imag:.3e}")
    if err > rtol * scale and scale > 1e-300:
        warnings.warn(f"quadrature reached relative error {err / scale:.2e} > {rtol:.1e}",
                      QuadratureWarning, stacklevel=2)
    out = val if integrand.kind == "current" else val[0]
    if full_output:
        return QuadResult(value=out, error=err, evaluations=shell.calls)
    return out
