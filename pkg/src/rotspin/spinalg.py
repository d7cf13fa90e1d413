"""Spin-space algebra in the Pauli basis.

Every 2x2 complex matrix is stored as ``c0 * 1 + cv . sigma`` with complex
coefficients. The product rule

    (a0 + a.sigma)(b0 + b.sigma) = (a0 b0 + a.b) + (a0 b + b0 a + i a x b).sigma

is all that is needed, so no general matrix library is involved.

Both containers are batched: ``PauliCoeff.c0`` has an arbitrary batch shape
``S`` and ``cv`` has shape ``S + (3,)``. ``MatrixVector3`` holds a spatial
3-vector of Pauli coefficients with ``c0`` of shape ``S + (3,)`` and ``cv`` of
shape ``S + (3, 3)``, where the second-to-last axis is the spatial index and
the last axis is the sigma index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "LEVI_CIVITA",
    "PauliCoeff",
    "MatrixVector3",
    "pauli_mul",
    "pauli_commutator",
    "pauli_trace_prod",
    "jordan_mul",
    "sigma_dot",
]


def _levi_civita() -> np.ndarray:
    eps = np.zeros((3, 3, 3))
    eps[0, 1, 2] = eps[1, 2, 0] = eps[2, 0, 1] = 1.0
    eps[0, 2, 1] = eps[2, 1, 0] = eps[1, 0, 2] = -1.0
    return eps


LEVI_CIVITA = _levi_civita()


def _as_batch(value, shape) -> np.ndarray:
    """Broadcast a scalar or batch array so it multiplies a (shape + (3,)) array."""
    arr = np.asarray(value)
    return arr[..., None] if arr.ndim else arr


@dataclass(frozen=True)
class PauliCoeff:
    """A batch of spin-space scalars ``c0 * 1 + cv . sigma``."""

    c0: np.ndarray
    cv: np.ndarray

    def __post_init__(self):
        c0 = np.asarray(self.c0, dtype=complex)
        cv = np.asarray(self.cv, dtype=complex)
        if cv.ndim == 0 or cv.shape[-1] != 3:
            raise ValueError(f"cv must end in an axis of length 3, got {cv.shape}")
        shape = np.broadcast_shapes(c0.shape, cv.shape[:-1])
        object.__setattr__(self, "c0", np.broadcast_to(c0, shape))
        object.__setattr__(self, "cv", np.broadcast_to(cv, shape + (3,)))

    # construction
    @classmethod
    def scalar(cls, value) -> "PauliCoeff":
        value = np.asarray(value, dtype=complex)
        return cls(value, np.zeros(value.shape + (3,), dtype=complex))

    @classmethod
    def vector(cls, v) -> "PauliCoeff":
        """The traceless element ``v . sigma``."""
        v = np.asarray(v, dtype=complex)
        return cls(np.zeros(v.shape[:-1], dtype=complex), v)

    @classmethod
    def identity(cls, shape=()) -> "PauliCoeff":
        return cls(np.ones(shape, dtype=complex), np.zeros(tuple(shape) + (3,), dtype=complex))

    @classmethod
    def zeros(cls, shape=()) -> "PauliCoeff":
        return cls(np.zeros(shape, dtype=complex), np.zeros(tuple(shape) + (3,), dtype=complex))

    @property
    def shape(self) -> tuple:
        return self.c0.shape

    def __getitem__(self, idx) -> "PauliCoeff":
        return PauliCoeff(self.c0[idx], self.cv[idx])

    # linear structure
    def __add__(self, other):
        other = _lift_scalar(other)
        return PauliCoeff(self.c0 + other.c0, self.cv + other.cv)

    __radd__ = __add__

    def __neg__(self):
        return PauliCoeff(-self.c0, -self.cv)

    def __sub__(self, other):
        return self + (-_lift_scalar(other))

    def __rsub__(self, other):
        return _lift_scalar(other) - self

    def __mul__(self, s):
        """Multiply by a complex scalar or a batch of them (not a Pauli product)."""
        if isinstance(s, (PauliCoeff, MatrixVector3)):
            return NotImplemented
        s = np.asarray(s)
        return PauliCoeff(self.c0 * s, self.cv * _as_batch(s, self.shape))

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self * (1.0 / np.asarray(s))

    def __matmul__(self, other):
        return pauli_mul(self, other)

    # spin-space operations
    def trace(self) -> np.ndarray:
        return 2.0 * self.c0

    def dagger(self) -> "PauliCoeff":
        return PauliCoeff(np.conj(self.c0), np.conj(self.cv))

    def hermitian_defect(self) -> np.ndarray:
        """Largest imaginary coefficient; zero for a Hermitian matrix."""
        return np.maximum(np.abs(self.c0.imag), np.abs(self.cv.imag).max(axis=-1))

    def real(self, atol: float | None = None) -> "PauliCoeff":
        """Drop imaginary parts, optionally asserting they are below ``atol``."""
        if atol is not None:
            scale = max(1.0, float(np.max(np.abs(self.c0), initial=0.0)),
                        float(np.max(np.abs(self.cv), initial=0.0)))
            defect = float(np.max(self.hermitian_defect(), initial=0.0))
            if defect > atol * scale:
                raise ValueError(f"non-Hermitian Pauli coefficient: |Im| = {defect:.3e}")
        return PauliCoeff(self.c0.real, self.cv.real)

    def project(self, axis) -> np.ndarray:
        """Replace sigma by the eigenvalue along the unit vector ``axis``.

        Returns ``c0 + cv . axis``. Only meaningful for quantities linear in sigma.
        """
        return self.c0 + self.cv @ np.asarray(axis, dtype=float)

    def max_abs(self) -> float:
        return float(max(np.max(np.abs(self.c0), initial=0.0), np.max(np.abs(self.cv), initial=0.0)))


def _lift_scalar(value) -> PauliCoeff:
    if isinstance(value, PauliCoeff):
        return value
    return PauliCoeff.scalar(value)


def pauli_mul(a: PauliCoeff, b: PauliCoeff) -> PauliCoeff:
    """Exact product ``a @ b`` of two batches of 2x2 matrices."""
    c0 = a.c0 * b.c0 + np.einsum("...i,...i->...", a.cv, b.cv)
    cv = (_as_batch(a.c0, a.shape) * b.cv + _as_batch(b.c0, b.shape) * a.cv
          + 1j * np.cross(a.cv, b.cv))
    return PauliCoeff(c0, cv)


def jordan_mul(a: PauliCoeff, b: PauliCoeff) -> PauliCoeff:
    """Symmetrized product ``(ab + ba) / 2``; Hermitian whenever a and b are."""
    c0 = a.c0 * b.c0 + np.einsum("...i,...i->...", a.cv, b.cv)
    cv = _as_batch(a.c0, a.shape) * b.cv + _as_batch(b.c0, b.shape) * a.cv
    return PauliCoeff(c0, cv)


def pauli_commutator(a: PauliCoeff, b: PauliCoeff) -> PauliCoeff:
    """``[a, b] = 2i (a_v x b_v) . sigma``; identity parts always commute."""
    cv = 2j * np.cross(a.cv, b.cv)
    return PauliCoeff(np.zeros(cv.shape[:-1], dtype=complex), cv)


def pauli_trace_prod(a: PauliCoeff, b: PauliCoeff) -> np.ndarray:
    """``Tr(a b) = 2 (a0 b0 + a_v . b_v)``."""
    return 2.0 * (a.c0 * b.c0 + np.einsum("...i,...i->...", a.cv, b.cv))


def sigma_dot(v) -> PauliCoeff:
    """``sigma . v`` for a real (batch of) 3-vector(s)."""
    return PauliCoeff.vector(v)


@dataclass(frozen=True)
class MatrixVector3:
    """A spatial 3-vector whose components are Pauli coefficients.

    ``c0[..., i]`` is the identity coefficient of component ``i`` and
    ``cv[..., i, j]`` its sigma_j coefficient.
    """

    c0: np.ndarray
    cv: np.ndarray

    def __post_init__(self):
        c0 = np.asarray(self.c0, dtype=complex)
        cv = np.asarray(self.cv, dtype=complex)
        if c0.ndim == 0 or c0.shape[-1] != 3 or cv.shape[-2:] != (3, 3):
            raise ValueError(f"bad MatrixVector3 shapes {c0.shape}, {cv.shape}")
        shape = np.broadcast_shapes(c0.shape[:-1], cv.shape[:-2])
        object.__setattr__(self, "c0", np.broadcast_to(c0, shape + (3,)))
        object.__setattr__(self, "cv", np.broadcast_to(cv, shape + (3, 3)))

    @classmethod
    def from_real(cls, v) -> "MatrixVector3":
        """Lift an ordinary vector (times the identity)."""
        v = np.asarray(v, dtype=complex)
        return cls(v, np.zeros(v.shape + (3,), dtype=complex))

    @classmethod
    def outer(cls, v, s: PauliCoeff) -> "MatrixVector3":
        """Component ``i`` is ``v_i * s`` for a real vector ``v``."""
        v = np.asarray(v)
        return cls(v * s.c0[..., None], v[..., :, None] * s.cv[..., None, :])

    @classmethod
    def sigma(cls, shape=()) -> "MatrixVector3":
        """The vector of Pauli matrices."""
        cv = np.broadcast_to(np.eye(3, dtype=complex), tuple(shape) + (3, 3))
        return cls(np.zeros(tuple(shape) + (3,), dtype=complex), cv)

    @classmethod
    def zeros(cls, shape=()) -> "MatrixVector3":
        return cls(np.zeros(tuple(shape) + (3,), dtype=complex),
                   np.zeros(tuple(shape) + (3, 3), dtype=complex))

    @property
    def shape(self) -> tuple:
        return self.c0.shape[:-1]

    def component(self, i: int) -> PauliCoeff:
        return PauliCoeff(self.c0[..., i], self.cv[..., i, :])

    @property
    def x(self) -> PauliCoeff:
        return self.component(0)

    @property
    def y(self) -> PauliCoeff:
        return self.component(1)

    @property
    def z(self) -> PauliCoeff:
        return self.component(2)

    def __getitem__(self, idx) -> "MatrixVector3":
        """Batch indexing (the spatial axis is never indexed here)."""
        return MatrixVector3(self.c0[idx], self.cv[idx])

    def __add__(self, other):
        if not isinstance(other, MatrixVector3):
            other = MatrixVector3.from_real(other)
        return MatrixVector3(self.c0 + other.c0, self.cv + other.cv)

    __radd__ = __add__

    def __neg__(self):
        return MatrixVector3(-self.c0, -self.cv)

    def __sub__(self, other):
        if not isinstance(other, MatrixVector3):
            other = MatrixVector3.from_real(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, s):
        """Scale by an ordinary (batch) scalar."""
        if isinstance(s, (PauliCoeff, MatrixVector3)):
            return NotImplemented
        s = np.asarray(s)
        return MatrixVector3(self.c0 * s[..., None], self.cv * s[..., None, None])

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self * (1.0 / np.asarray(s))

    # products with ordinary vectors are exact
    def dot_real(self, v) -> PauliCoeff:
        v = np.asarray(v)
        return PauliCoeff(np.einsum("...i,...i->...", self.c0, v),
                          np.einsum("...ij,...i->...j", self.cv, v))

    def cross_real(self, v) -> "MatrixVector3":
        """``self x v``."""
        v = np.asarray(v)
        return MatrixVector3(np.einsum("ijk,...j,...k->...i", LEVI_CIVITA, self.c0, v),
                             np.einsum("ijk,...jl,...k->...il", LEVI_CIVITA, self.cv, v))

    def rcross_real(self, v) -> "MatrixVector3":
        """``v x self``."""
        return -self.cross_real(v)

    # products of two matrix-valued objects use the symmetrized product
    def dot(self, other: "MatrixVector3") -> PauliCoeff:
        """Symmetrized ``sum_i (self_i other_i + other_i self_i) / 2``."""
        c0 = (np.einsum("...i,...i->...", self.c0, other.c0)
              + np.einsum("...ij,...ij->...", self.cv, other.cv))
        cv = (np.einsum("...i,...ij->...j", self.c0, other.cv)
              + np.einsum("...i,...ij->...j", other.c0, self.cv))
        return PauliCoeff(c0, cv)

    def cross(self, other: "MatrixVector3") -> "MatrixVector3":
        """Symmetrized cross product ``eps_ijk (self_j other_k + other_k self_j) / 2``."""
        c0 = (np.einsum("ijk,...j,...k->...i", LEVI_CIVITA, self.c0, other.c0)
              + np.einsum("ijk,...jl,...kl->...i", LEVI_CIVITA, self.cv, other.cv))
        cv = (np.einsum("ijk,...j,...kl->...il", LEVI_CIVITA, self.c0, other.cv)
              + np.einsum("ijk,...k,...jl->...il", LEVI_CIVITA, other.c0, self.cv))
        return MatrixVector3(c0, cv)

    def scale(self, s: PauliCoeff) -> "MatrixVector3":
        """Symmetrized product of every component with the spin scalar ``s``."""
        c0 = (self.c0 * s.c0[..., None]
              + np.einsum("...ij,...j->...i", self.cv, s.cv))
        cv = self.cv * s.c0[..., None, None] + self.c0[..., :, None] * s.cv[..., None, :]
        return MatrixVector3(c0, cv)

    def mdot(self, other: "MatrixVector3") -> PauliCoeff:
        """Exact ordered product ``sum_i self_i @ other_i``."""
        total = PauliCoeff.zeros(np.broadcast_shapes(self.shape, other.shape))
        for i in range(3):
            total = total + pauli_mul(self.component(i), other.component(i))
        return total

    def trace(self) -> np.ndarray:
        """Spin trace of each component, shape ``S + (3,)``."""
        return 2.0 * self.c0

    def sigma_trace(self, axis) -> np.ndarray:
        """``Tr[(sigma . axis) self_i]`` for each spatial component ``i``."""
        return 2.0 * np.einsum("...ij,j->...i", self.cv, np.asarray(axis, dtype=float))

    def hermitian_defect(self) -> np.ndarray:
        return np.maximum(np.abs(self.c0.imag).max(axis=-1),
                          np.abs(self.cv.imag).max(axis=(-2, -1)))

    def real(self, atol: float | None = None) -> "MatrixVector3":
        if atol is not None:
            scale = max(1.0, float(np.max(np.abs(self.c0), initial=0.0)),
                        float(np.max(np.abs(self.cv), initial=0.0)))
            defect = float(np.max(self.hermitian_defect(), initial=0.0))
            if defect > atol * scale:
                raise ValueError(f"non-Hermitian vector component: |Im| = {defect:.3e}")
        return MatrixVector3(self.c0.real, self.cv.real)

    def project(self, axis) -> np.ndarray:
        """Replace sigma by the eigenvalue along ``axis``; returns ``S + (3,)``."""
        return self.c0 + self.cv @ np.asarray(axis, dtype=float)

    def max_abs(self) -> float:
        return float(max(np.max(np.abs(self.c0), initial=0.0), np.max(np.abs(self.cv), initial=0.0)))
