"""The 133Cs (I = 7/2) experiment: pulse calibrations, time grid, initial states."""

import math

from .quantum import TimeGrid, delta_s_from_physical, lambda_from_physical
from .spin import SpinNumber

SPIN = SpinNumber(7)
NU_Q_HZ = 7.7e3
DELTA_TAU_S = 5e-6
N_POINTS = 45
T_PI_S = (25e-6, 30e-6, 40e-6, 50e-6, 60e-6, 100e-6)
LAMBDAS = (0.67, 0.81, 1.08, 1.35, 1.62, 2.70)
THETA_NORTH = math.pi / 4
THETA_SOUTH = 3 * math.pi / 4
PHI = math.pi
CONVENTION = "paper"

# published lambda values as reported; the grid follows from each t_pi
TRAPPED_LAMBDAS = (1.35, 1.62, 2.70)
DELOCALIZED_LAMBDAS = (0.67, 0.81)


def grid_for(t_pi_s: float, convention: str = CONVENTION) -> TimeGrid:
    """45 samples spaced by delta_tau = 5 us, in units of 1/w1."""
    return TimeGrid(delta_s_from_physical(DELTA_TAU_S, t_pi_s, convention), N_POINTS)


def grids(convention: str = CONVENTION) -> list[TimeGrid]:
    return [grid_for(t, convention) for t in T_PI_S]


def computed_lambdas(convention: str = CONVENTION) -> list[float]:
    return [lambda_from_physical(SPIN, NU_Q_HZ, t, convention) for t in T_PI_S]
