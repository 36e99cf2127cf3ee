"""Spin-I angular momentum operators and spin coherent states.

Basis vectors are ordered m = I, I-1, ..., -I, so row 0 is the highest
weight state |I, I>.  All operators are dense complex arrays in units of hbar.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import DomainError, NumericError

HERMITIAN_TOL = 1e-12
NORM_TOL = 1e-12
TRACE_IMAG_TOL = 1e-10


@dataclass(frozen=True)
class SpinNumber:
    """Spin quantum number stored as the integer 2I."""

    two_I: int

    def __post_init__(self):
        if isinstance(self.two_I, bool) or not isinstance(self.two_I, (int, np.integer)):
            raise DomainError(f"two_I must be an integer, got {self.two_I!r}")
        if self.two_I < 1:
            raise DomainError(f"two_I must be >= 1, got {self.two_I}")
        object.__setattr__(self, "two_I", int(self.two_I))

    @classmethod
    def from_value(cls, I: float) -> "SpinNumber":
        two_I = 2 * I
        if abs(two_I - round(two_I)) > 1e-12:
            raise DomainError(f"spin must be a multiple of 1/2, got {I}")
        return cls(int(round(two_I)))

    @property
    def I(self) -> float:
        return self.two_I / 2

    @property
    def dim(self) -> int:
        return self.two_I + 1

    @property
    def m_values(self) -> np.ndarray:
        return self.I - np.arange(self.dim)

    def __str__(self):
        return f"{self.two_I}/2" if self.two_I % 2 else str(self.two_I // 2)


class SpinOperators(NamedTuple):
    Ix: np.ndarray
    Iy: np.ndarray
    Iz: np.ndarray
    Isq: np.ndarray


@dataclass(frozen=True)
class CoherentAngles:
    """Polar angle theta in [0, pi] and azimuth phi in [0, 2 pi)."""

    theta: float
    phi: float

    def __post_init__(self):
        if not (0.0 <= self.theta <= np.pi):
            raise DomainError(f"theta must lie in [0, pi], got {self.theta}")
        if not (0.0 <= self.phi < 2 * np.pi):
            raise DomainError(f"phi must lie in [0, 2 pi), got {self.phi}")


def _as_spin(spin) -> SpinNumber:
    if isinstance(spin, SpinNumber):
        return spin
    return SpinNumber.from_value(spin)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@lru_cache(maxsize=None)
def _operators(two_I: int) -> SpinOperators:
    spin = SpinNumber(two_I)
    I, m = spin.I, spin.m_values
    # <m+1| I+ |m> sits one above the diagonal because m decreases down the rows
    raising = np.diag(np.sqrt(I * (I + 1) - m[1:] * (m[1:] + 1)), k=1).astype(complex)
    lowering = raising.conj().T
    Ix = 0.5 * (raising + lowering)
    Iy = -0.5j * (raising - lowering)
    Iz = np.diag(m).astype(complex)
    Isq = Ix @ Ix + Iy @ Iy + Iz @ Iz
    return SpinOperators(*(_frozen(op) for op in (Ix, Iy, Iz, Isq)))


def spin_operators(spin) -> SpinOperators:
    """Return read-only (Ix, Iy, Iz, I^2) for a spin given as SpinNumber or I."""
    return _operators(_as_spin(spin).two_I)


def exp_hermitian(H: np.ndarray, t: float) -> np.ndarray:
    """exp(-i H t) for Hermitian H, by eigendecomposition."""
    try:
        w, V = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise NumericError(
            f"eigendecomposition failed (dim={H.shape[0]}, "
            f"|H|_max={np.abs(H).max():.3g})"
        ) from exc
    return (V * np.exp(-1j * w * t)) @ V.conj().T


def is_hermitian(op: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return op.ndim == 2 and op.shape[0] == op.shape[1] and np.abs(op - op.conj().T).max() <= tol


def coherent_state(spin, theta: float, phi: float) -> np.ndarray:
    """Spin coherent state exp(-i phi Iz) exp(-i theta Iy) |I, I>.

    With this convention <I>/I = (sin t cos p, sin t sin p, cos t), so the
    classical coordinates are z = cos(theta), zeta = phi.
    """
    angles = CoherentAngles(theta, phi)
    spin = _as_spin(spin)
    ops = spin_operators(spin)
    top = np.zeros(spin.dim, dtype=complex)
    top[0] = 1.0
    psi = exp_hermitian(ops.Iy, angles.theta) @ top
    # Iz is diagonal, so its rotation is just a phase per m
    return np.exp(-1j * angles.phi * spin.m_values) * psi


def deviation_density(psi: np.ndarray) -> np.ndarray:
    """Outer product |psi><psi| of a normalized state vector."""
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1:
        raise DomainError(f"state must be a vector, got shape {psi.shape}")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > NORM_TOL:
        raise DomainError(f"state is not normalized (norm = {norm!r})")
    return np.outer(psi, psi.conj())


def expectation(op: np.ndarray, rho: np.ndarray) -> float:
    """Tr(rho op) for Hermitian op; the imaginary residue is checked, then dropped."""
    op = np.asarray(op)
    rho = np.asarray(rho)
    if op.shape != rho.shape or op.ndim != 2:
        raise DomainError(f"dimension mismatch: operator {op.shape}, density {rho.shape}")
    if not is_hermitian(op):
        raise DomainError("observable is not Hermitian")
    value = np.einsum("ij,ji->", rho, op)
    if abs(value.imag) > TRACE_IMAG_TOL:
        raise NumericError(f"expectation has imaginary part {value.imag:.3g}")
    return float(value.real)
