"""Fixed points, their linear stability, and the lambda sweep.

For lam > 1 the fixed point P_pi = (0, pi) loses stability and splits into
P_plus/P_minus = (+-sqrt(1 - 1/lam^2), pi), a supercritical pitchfork.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .classical import PhaseSpacePoint, classical_temporal_mean, integrate, _flow
from .errors import DomainError
from .quantum import DEFAULT_BIN_WIDTH, ModelParams, TimeGrid, evolve_z_series, temporal_stats
from .spin import _as_spin, coherent_state

EIG_TOL = 1e-10
THETA_NORTH = math.pi / 4
THETA_SOUTH = 3 * math.pi / 4


class Stability(str, Enum):
    CENTER = "center_stable"
    SADDLE = "saddle_unstable"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class FixedPoint:
    point: PhaseSpacePoint
    label: str
    stability: Stability
    eigenvalues: tuple[complex, complex]


@dataclass(frozen=True)
class SweepRow:
    lam: float
    hemisphere: str
    z_mean_quantum: float
    z_std_quantum: float
    z_mean_classical: float
    z0_theory: float


def jacobian(p: PhaseSpacePoint, lam: float) -> np.ndarray:
    """d(dz/ds, dzeta/ds) / d(z, zeta)."""
    z, zeta = p.z, p.zeta
    _flow(z, zeta, lam)  # pole guard
    r = math.sqrt(1.0 - z * z)
    s, c = math.sin(zeta), math.cos(zeta)
    return np.array(
        [
            [z * s / r, -r * c],
            [lam + c / r**3, -z * s / r],
        ]
    )


def classify(eigenvalues, tol: float = EIG_TOL) -> Stability:
    eigenvalues = np.asarray(eigenvalues)
    if np.abs(eigenvalues).max() <= tol:
        return Stability.DEGENERATE
    if np.abs(eigenvalues.real).max() <= tol:
        return Stability.CENTER
    return Stability.SADDLE


def _fixed_point(z: float, zeta: float, label: str, lam: float) -> FixedPoint:
    p = PhaseSpacePoint(z, zeta)
    eig = np.linalg.eigvals(jacobian(p, lam))
    # traceless 2x2: order as (+, -) on whichever axis carries the spectrum
    eig = sorted(eig, key=lambda e: (-e.real, -e.imag))
    return FixedPoint(p, label, classify(eig), (complex(eig[0]), complex(eig[1])))


def bifurcation_z0(lam: float) -> float:
    """Upper branch sqrt(1 - 1/lam^2) for lam > 1, else 0."""
    return math.sqrt(1.0 - 1.0 / lam**2) if lam > 1 else 0.0


def fixed_points(lam: float) -> list[FixedPoint]:
    """Fixed points in the cell zeta in {0, pi}, each classified by its Jacobian."""
    if lam < 0:
        raise DomainError(f"lambda must be >= 0, got {lam}")
    points = [
        _fixed_point(0.0, 0.0, "P0", lam),
        _fixed_point(0.0, math.pi, "Ppi", lam),
    ]
    if lam > 1:
        z0 = bifurcation_z0(lam)
        points.append(_fixed_point(z0, math.pi, "Pplus", lam))
        points.append(_fixed_point(-z0, math.pi, "Pminus", lam))
    return points


def separatrix_energy(lam: float) -> float:
    """Energy of the saddle P_pi, whose level set bounds the self-trapped orbits."""
    if not lam > 1:
        raise DomainError(f"no separatrix below threshold (lambda = {lam} <= 1)")
    return 1.0


def bifurcation_curve(lambdas: Sequence[float]) -> list[tuple[float, float, float]]:
    rows = []
    for lam in lambdas:
        if lam < 0:
            raise DomainError(f"lambda must be >= 0, got {lam}")
        z0 = bifurcation_z0(lam)
        rows.append((float(lam), z0, -z0))
    return rows


def _grids_for(lambdas, grid) -> list[TimeGrid]:
    if isinstance(grid, TimeGrid):
        return [grid] * len(lambdas)
    grids = list(grid)
    if len(grids) != len(lambdas):
        raise DomainError(f"{len(grids)} grids given for {len(lambdas)} lambda values")
    return grids


def sweep_row(spin, lam: float, grid: TimeGrid, theta: float, hemisphere: str,
              phi: float = math.pi, bin_width: float = DEFAULT_BIN_WIDTH) -> SweepRow:
    spin = _as_spin(spin)
    series = evolve_z_series(coherent_state(spin, theta, phi), ModelParams(spin, lam), grid)
    stats = temporal_stats(series, bin_width)
    traj = integrate(PhaseSpacePoint.from_angles(theta, phi), lam, grid)
    if hemisphere not in ("north", "south"):
        raise DomainError(f"hemisphere must be 'north' or 'south', got {hemisphere!r}")
    z0 = bifurcation_z0(lam)
    return SweepRow(
        lam=float(lam),
        hemisphere=hemisphere,
        z_mean_quantum=stats.z_mean,
        z_std_quantum=stats.z_std,
        z_mean_classical=classical_temporal_mean(traj),
        z0_theory=(z0 if hemisphere == "north" else -z0) if z0 else 0.0,
    )


def run_sweep(
    spin,
    lambdas: Sequence[float],
    grid: TimeGrid | Sequence[TimeGrid],
    theta_north: float = THETA_NORTH,
    theta_south: float = THETA_SOUTH,
    phi: float = math.pi,
    bin_width: float = DEFAULT_BIN_WIDTH,
) -> list[SweepRow]:
    """Quantum and classical temporal means for both hemispheres at each lambda.

    ``grid`` is either one TimeGrid shared by every lambda or one per lambda
    (the physical protocol fixes delta_tau, so delta_s changes with t_pi).
    Rows come out in input order, north before south.
    """
    lambdas = [float(x) for x in lambdas]
    for lam in lambdas:
        if lam < 0:
            raise DomainError(f"lambda must be >= 0, got {lam}")
    rows = []
    for lam, g in zip(lambdas, _grids_for(lambdas, grid)):
        rows.append(sweep_row(spin, lam, g, theta_north, "north", phi, bin_width))
        rows.append(sweep_row(spin, lam, g, theta_south, "south", phi, bin_width))
    return rows
