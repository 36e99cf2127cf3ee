"""Josephson-junction model of a quadrupolar NMR spin system.

Exact spin-I dynamics under H' = (lam / 2I) Iz^2 - Ix, the semiclassical
mean-field flow on the phase sphere and its pitchfork bifurcation at lam = 1.
"""

from .errors import DomainError, NumericError, PoleError
from .spin import (
    CoherentAngles,
    SpinNumber,
    SpinOperators,
    coherent_state,
    deviation_density,
    expectation,
    spin_operators,
)
from .quantum import (
    ModelParams,
    TemporalStats,
    TimeGrid,
    ZSeries,
    build_hamiltonian,
    evolve_z_series,
    lambda_from_physical,
    propagator,
    temporal_stats,
)
from .classical import (
    ClassicalTrajectory,
    PhaseSpacePoint,
    classical_energy,
    classical_temporal_mean,
    integrate,
    rhs,
)
from .bifurcation import (
    FixedPoint,
    SweepRow,
    bifurcation_curve,
    fixed_points,
    jacobian,
    run_sweep,
    separatrix_energy,
)

__version__ = "0.1.0"
