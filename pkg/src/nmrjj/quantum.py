"""Exact evolution under the dimensionless quadrupolar NMR Hamiltonian.

H' = H_NMR / (hbar w1) = (lam / 2I) Iz^2 - Ix, evolved in dimensionless time
s = w1 t.  Observables are reported as the normalized magnetization
z = <Iz> / I.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NumericError
from .spin import SpinNumber, _as_spin, exp_hermitian, is_hermitian, spin_operators

Z_BOUND_TOL = 1e-9
DEFAULT_BIN_WIDTH = 0.05

CONVENTIONS = ("paper", "standard")


@dataclass(frozen=True)
class ModelParams:
    spin: SpinNumber
    lam: float

    def __post_init__(self):
        object.__setattr__(self, "spin", _as_spin(self.spin))
        if not math.isfinite(self.lam):
            raise DomainError(f"lambda must be finite, got {self.lam}")

    @property
    def negative_lambda(self) -> bool:
        """Negative couplings run, but lie outside the studied regime."""
        return self.lam < 0


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid s_k = k * delta_s, k = 0 .. n_points - 1."""

    delta_s: float
    n_points: int

    def __post_init__(self):
        if not (math.isfinite(self.delta_s) and self.delta_s > 0):
            raise DomainError(f"delta_s must be > 0, got {self.delta_s}")
        if isinstance(self.n_points, bool) or int(self.n_points) != self.n_points or self.n_points < 1:
            raise DomainError(f"n_points must be an integer >= 1, got {self.n_points}")
        object.__setattr__(self, "n_points", int(self.n_points))

    @property
    def s(self) -> np.ndarray:
        return self.delta_s * np.arange(self.n_points)

    @property
    def span(self) -> float:
        return self.delta_s * (self.n_points - 1)


@dataclass(frozen=True)
class ZSeries:
    s: np.ndarray
    z: np.ndarray
    flags: tuple = ()

    def __post_init__(self):
        if len(self.s) != len(self.z):
            raise DomainError("s and z must have equal lengths")
        if len(self.z) and np.abs(self.z).max() > 1 + Z_BOUND_TOL:
            raise NumericError(f"|z| exceeds 1: max {np.abs(self.z).max()!r}")

    def __len__(self):
        return len(self.z)


@dataclass(frozen=True)
class TemporalStats:
    """Temporal mean, spread and histogram of a z-series.

    The Gaussian G(x) = g0 * exp(-(x - z_mean)^2 / z_std^2) summarizes the
    histogram.
    """

    z_mean: float
    z_std: float
    g0: float
    bin_edges: np.ndarray
    counts: np.ndarray = field(repr=False)

    @property
    def bin_centers(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[:-1] + self.bin_edges[1:])

    @property
    def histogram(self) -> list[tuple[float, int]]:
        return [(float(c), int(n)) for c, n in zip(self.bin_centers, self.counts)]

    def gaussian(self, x):
        x = np.asarray(x, dtype=float)
        if self.z_std == 0:
            return np.where(x == self.z_mean, self.g0, 0.0)
        return self.g0 * np.exp(-((x - self.z_mean) ** 2) / self.z_std**2)


def build_hamiltonian(params: ModelParams) -> np.ndarray:
    ops = spin_operators(params.spin)
    return (params.lam / (2 * params.spin.I)) * (ops.Iz @ ops.Iz) - ops.Ix


def propagator(H: np.ndarray, s: float) -> np.ndarray:
    """U(s) = exp(-i H s) for Hermitian H."""
    H = np.asarray(H)
    if not is_hermitian(H):
        raise DomainError("propagator requires a Hermitian matrix")
    return exp_hermitian(H, s)


def evolve_states(psi0: np.ndarray, params: ModelParams, s_values) -> np.ndarray:
    """States U(s_k) psi0 as rows, from one eigendecomposition of H'."""
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (params.spin.dim,):
        raise DomainError(f"state of length {psi0.shape} does not match dim {params.spin.dim}")
    H = build_hamiltonian(params)
    try:
        w, V = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigendecomposition of H' failed for lambda={params.lam}") from exc
    coeffs = V.conj().T @ psi0
    phases = np.exp(-1j * np.outer(np.asarray(s_values, dtype=float), w))
    return (phases * coeffs) @ V.T


def evolve_z_series(psi0: np.ndarray, params: ModelParams, grid: TimeGrid) -> ZSeries:
    s = grid.s
    states = evolve_states(psi0, params, s)
    # Iz is diagonal in the m basis
    z = (np.abs(states) ** 2) @ params.spin.m_values / params.spin.I
    flags = ("negative_lambda",) if params.negative_lambda else ()
    return ZSeries(s=s, z=z, flags=flags)


def temporal_stats(series: ZSeries, bin_width: float = DEFAULT_BIN_WIDTH) -> TemporalStats:
    """Mean over every grid point (k = 0 included), population std, histogram on [-1, 1]."""
    z = np.asarray(series.z, dtype=float)
    if len(z) < 2:
        raise DomainError(f"need at least 2 samples, got {len(z)}")
    if not (bin_width > 0):
        raise DomainError(f"bin_width must be > 0, got {bin_width}")
    n_bins = math.ceil(2.0 / bin_width - 1e-9)
    edges = -1.0 + bin_width * np.arange(n_bins + 1)
    counts, _ = np.histogram(np.clip(z, -1.0, 1.0), bins=edges)
    return TemporalStats(
        z_mean=float(z.mean()),
        z_std=float(z.std()),
        g0=float(counts.max()),
        bin_edges=edges,
        counts=counts,
    )


def _check_convention(convention: str):
    if convention not in CONVENTIONS:
        raise DomainError(f"convention must be one of {CONVENTIONS}, got {convention!r}")


def rf_strength(t_pi_seconds: float, convention: str = "paper") -> float:
    """Angular RF strength w1 implied by a calibrated pi-pulse length.

    The ``paper`` convention w1 = 2 pi / t_pi reproduces the published lambda
    table; ``standard`` is the textbook pi-pulse relation w1 = pi / t_pi.
    """
    _check_convention(convention)
    if not t_pi_seconds > 0:
        raise DomainError(f"t_pi must be > 0, got {t_pi_seconds}")
    return (2 * math.pi if convention == "paper" else math.pi) / t_pi_seconds


def lambda_from_physical(spin, nu_q_hz: float, t_pi_seconds: float, convention: str = "paper") -> float:
    """lam = I wQ / w1 with wQ = 2 pi nu_q."""
    if not nu_q_hz > 0:
        raise DomainError(f"nu_q must be > 0, got {nu_q_hz}")
    w1 = rf_strength(t_pi_seconds, convention)
    return _as_spin(spin).I * 2 * math.pi * nu_q_hz / w1


def delta_s_from_physical(delta_tau_seconds: float, t_pi_seconds: float, convention: str = "paper") -> float:
    """Dimensionless step w1 * delta_tau."""
    if not delta_tau_seconds > 0:
        raise DomainError(f"delta_tau must be > 0, got {delta_tau_seconds}")
    return rf_strength(t_pi_seconds, convention) * delta_tau_seconds
