"""Semiclassical mean-field flow on the phase sphere.

H(z, zeta) = (lam / 2) z^2 - sqrt(1 - z^2) cos(zeta), with z and zeta
canonically conjugate:

    dz/ds    = -dH/dzeta = -sqrt(1 - z^2) sin(zeta)
    dzeta/ds =  dH/dz    =  lam z + z cos(zeta) / sqrt(1 - z^2)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PoleError
from .quantum import TimeGrid

EPS_POLE = 1e-12
H_MAX = 1e-3


@dataclass(frozen=True)
class PhaseSpacePoint:
    """Normalized magnetization z in [-1, 1] and unwrapped relative phase zeta."""

    z: float
    zeta: float

    def __post_init__(self):
        if not abs(self.z) <= 1.0:
            raise DomainError(f"|z| must be <= 1, got {self.z}")

    @property
    def wrapped_zeta(self) -> float:
        """zeta folded into (-pi, pi]."""
        w = math.remainder(self.zeta, 2 * math.pi)
        return math.pi if w == -math.pi else w

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "PhaseSpacePoint":
        """Classical image (cos theta, phi) of a spin coherent state."""
        return cls(math.cos(theta), phi)


@dataclass(frozen=True)
class ClassicalTrajectory:
    s: np.ndarray
    z: np.ndarray
    zeta: np.ndarray
    energy: np.ndarray
    lam: float

    def __len__(self):
        return len(self.s)

    @property
    def points(self) -> list[PhaseSpacePoint]:
        return [PhaseSpacePoint(float(z), float(x)) for z, x in zip(self.z, self.zeta)]

    @property
    def wrapped_zeta(self) -> np.ndarray:
        return np.array([p.wrapped_zeta for p in self.points])

    @property
    def energy_drift(self) -> float:
        """Largest |E(s) - E(0)| relative to max(|E(0)|, 1)."""
        if len(self.energy) == 0:
            return 0.0
        return float(np.abs(self.energy - self.energy[0]).max() / max(abs(self.energy[0]), 1.0))


def _energy(z: float, zeta: float, lam: float) -> float:
    return 0.5 * lam * z * z - math.sqrt(1.0 - z * z) * math.cos(zeta)


def _flow(z: float, zeta: float, lam: float) -> tuple[float, float]:
    if abs(z) >= 1.0 - EPS_POLE:
        raise PoleError(f"z = {z!r} is within {EPS_POLE} of a pole")
    r = math.sqrt(1.0 - z * z)
    return -r * math.sin(zeta), lam * z + z * math.cos(zeta) / r


def classical_energy(p: PhaseSpacePoint, lam: float) -> float:
    if not abs(p.z) <= 1.0:
        raise DomainError(f"|z| must be <= 1, got {p.z}")
    return _energy(p.z, p.zeta, lam)


def rhs(p: PhaseSpacePoint, lam: float) -> tuple[float, float]:
    """(dz/ds, dzeta/ds); raises PoleError within EPS_POLE of |z| = 1."""
    return _flow(p.z, p.zeta, lam)


def _rk4_step(z, zeta, lam, h):
    k1z, k1p = _flow(z, zeta, lam)
    k2z, k2p = _flow(z + 0.5 * h * k1z, zeta + 0.5 * h * k1p, lam)
    k3z, k3p = _flow(z + 0.5 * h * k2z, zeta + 0.5 * h * k2p, lam)
    k4z, k4p = _flow(z + h * k3z, zeta + h * k3p, lam)
    return (
        z + h / 6.0 * (k1z + 2 * k2z + 2 * k3z + k4z),
        zeta + h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p),
    )


def integrate(p0: PhaseSpacePoint, lam: float, grid: TimeGrid, h_max: float = H_MAX) -> ClassicalTrajectory:
    """Fixed-step RK4, sampled on ``grid``.

    Each grid interval is split into ceil(delta_s / h_max) equal substeps.
    On pole proximity a PoleError is raised carrying the offending s and the
    trajectory sampled so far.
    """
    if not h_max > 0:
        raise DomainError(f"h_max must be > 0, got {h_max}")
    if abs(p0.z) >= 1.0 - EPS_POLE:
        raise PoleError(f"initial z = {p0.z!r} is at a pole", s=0.0)

    n_sub = max(1, math.ceil(grid.delta_s / h_max - 1e-9))
    h = grid.delta_s / n_sub
    n = grid.n_points
    zs = np.empty(n)
    zetas = np.empty(n)
    z, zeta = float(p0.z), float(p0.zeta)
    zs[0], zetas[0] = z, zeta

    for k in range(1, n):
        for j in range(n_sub):
            try:
                z, zeta = _rk4_step(z, zeta, lam, h)
                if abs(z) >= 1.0 - EPS_POLE:
                    raise PoleError(f"z = {z!r} reached a pole")
            except PoleError as exc:
                s_fail = (k - 1) * grid.delta_s + j * h
                partial = _trajectory(grid.s[:k], zs[:k], zetas[:k], lam)
                raise PoleError(
                    f"trajectory reached the pole near s = {s_fail:.6g} (lambda = {lam})",
                    s=s_fail,
                    trajectory=partial,
                ) from exc
        zs[k], zetas[k] = z, zeta

    return _trajectory(grid.s, zs, zetas, lam)


def _trajectory(s, zs, zetas, lam) -> ClassicalTrajectory:
    energy = np.array([_energy(z, x, lam) for z, x in zip(zs, zetas)])
    return ClassicalTrajectory(s=np.array(s), z=np.array(zs), zeta=np.array(zetas), energy=energy, lam=lam)


def classical_temporal_mean(traj: ClassicalTrajectory) -> float:
    if len(traj) < 2:
        raise DomainError(f"need at least 2 samples, got {len(traj)}")
    return float(np.mean(traj.z))
