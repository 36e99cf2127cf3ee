"""Acceptance checks for the simulator, shared by the test suite and the
``reproduce-paper`` report.

Each check returns a Check record instead of raising, so a report can list
every criterion with its measured value.
"""

from __future__ import annotations

import math
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import protocol
from .bifurcation import Stability, bifurcation_curve, bifurcation_z0, fixed_points, jacobian, run_sweep
from .classical import PhaseSpacePoint, integrate
from .io import write_sweep
from .quantum import ModelParams, TimeGrid, build_hamiltonian, evolve_states, evolve_z_series, propagator
from .spin import SpinNumber, coherent_state

# self-trapping band: 10% of the |z| = 1 scale plus 0.05 for the finite 45-sample window
TRAPPED_BAND = 0.15
DELOCALIZED_BOUND = 0.25
EHRENFEST_TOL = 0.1
EHRENFEST_S_MAX = 2.0
LAMBDA_MAP_TOL = 0.01


@dataclass(frozen=True)
class Check:
    number: int
    name: str
    passed: bool
    detail: str

    def __post_init__(self):
        object.__setattr__(self, "passed", bool(self.passed))

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number}. {self.name}: {self.detail}"


def check_pitchfork() -> Check:
    lambdas = (0.1, 0.5, 0.99, 1.0, 1.01, 1.35, 2.0, 2.7, 10.0)
    problems = []
    for lam in lambdas:
        pts = {p.label: p for p in fixed_points(lam)}
        expected = 2 if lam <= 1 else 4
        if len(pts) != expected:
            problems.append(f"lam={lam}: {len(pts)} fixed points")
        p_pi = pts["Ppi"].stability
        want = Stability.CENTER if lam < 1 else Stability.DEGENERATE if lam == 1 else Stability.SADDLE
        if p_pi != want:
            problems.append(f"lam={lam}: P_pi {p_pi.value}")
        for label in ("Pplus", "Pminus"):
            if label in pts:
                re = max(abs(e.real) for e in pts[label].eigenvalues)
                if re > 1e-10 or pts[label].stability != Stability.CENTER:
                    problems.append(f"lam={lam}: {label} Re(eig)={re:.2e}")
    return Check(1, "pitchfork structure", not problems,
                 "; ".join(problems) or f"counts, P_pi flip at 1 and P+- centers over {len(lambdas)} lambdas")


def check_bifurcation_values() -> Check:
    cases = {2.70: 0.9289, 1.35: 0.6718}
    problems = []
    for lam, rounded in cases.items():
        z0 = bifurcation_curve([lam])[0][1]
        if abs(z0 - math.sqrt(1 - 1 / lam**2)) > 1e-12 or abs(z0 - rounded) > 5e-5:
            problems.append(f"z0({lam})={z0!r}")
    for lam in (0.0, 0.5, 0.67, 1.0):
        if bifurcation_curve([lam])[0][1:] != (0.0, 0.0):
            problems.append(f"z0({lam}) != 0")
    return Check(2, "bifurcation curve values", not problems, "; ".join(problems) or "z0(2.70)=0.9289, z0(1.35)=0.6718, z0(<=1)=0")


def paper_sweep():
    return run_sweep(protocol.SPIN, protocol.LAMBDAS, protocol.grids(),
                     protocol.THETA_NORTH, protocol.THETA_SOUTH, protocol.PHI)


def check_trapping_band(rows=None) -> Check:
    rows = paper_sweep() if rows is None else rows
    problems, notes = [], []
    for r in rows:
        sign = 1.0 if r.hemisphere == "north" else -1.0
        if r.lam in protocol.TRAPPED_LAMBDAS:
            target = sign * bifurcation_z0(r.lam)
            err = abs(r.z_mean_quantum - target)
            ok = bool(np.sign(r.z_mean_quantum) == sign and err <= TRAPPED_BAND)
            notes.append(f"{r.lam}/{r.hemisphere[0]}: zbar={r.z_mean_quantum:+.4f} vs {target:+.4f}")
            if not ok:
                problems.append(f"lam={r.lam} {r.hemisphere}: zbar={r.z_mean_quantum:+.4f}, target {target:+.4f}, |err|={err:.3f}")
        elif r.lam in protocol.DELOCALIZED_LAMBDAS:
            notes.append(f"{r.lam}/{r.hemisphere[0]}: zbar={r.z_mean_quantum:+.4f}")
            if abs(r.z_mean_quantum) >= DELOCALIZED_BOUND:
                problems.append(f"lam={r.lam} {r.hemisphere}: |zbar|={abs(r.z_mean_quantum):.3f}")
    detail = "; ".join(problems) if problems else "; ".join(notes)
    return Check(3, "self-trapping band (quantum)", not problems, detail)


def check_rabi_limit() -> Check:
    grid = TimeGrid(math.pi / 10, 45)
    worst = 0.0
    for two_I in (1, 2, 3, 7):
        spin = SpinNumber(two_I)
        series = evolve_z_series(coherent_state(spin, 0.0, 0.0), ModelParams(spin, 0.0), grid)
        worst = max(worst, np.abs(series.z - np.cos(grid.s)).max())
    for lam in (0.67, 2.7, 5.0, -3.0):
        spin = SpinNumber(1)
        series = evolve_z_series(coherent_state(spin, 0.0, 0.0), ModelParams(spin, lam), grid)
        worst = max(worst, np.abs(series.z - np.cos(grid.s)).max())
    return Check(4, "Rabi limit", worst < 1e-9, f"max |z - cos s| = {worst:.2e}")


def check_ehrenfest() -> Check:
    lam = 2.70
    grid = TimeGrid(0.01, int(round(EHRENFEST_S_MAX / 0.01)) + 1)
    zq = evolve_z_series(coherent_state(protocol.SPIN, math.pi / 4, math.pi), ModelParams(protocol.SPIN, lam), grid).z
    zc = integrate(PhaseSpacePoint.from_angles(math.pi / 4, math.pi), lam, grid).z
    gap = np.abs(zq - zc)
    worst = float(gap.max())
    return Check(5, "short-time quantum-classical correspondence", worst < EHRENFEST_TOL,
                 f"max |zq - zc| = {worst:.4f} at s = {grid.s[gap.argmax()]:.2f} (bound {EHRENFEST_TOL})")


def check_conservation() -> Check:
    rng = np.random.default_rng(20120914)
    unitarity = 0.0
    for _ in range(20):
        dim = int(rng.integers(2, 9))
        a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        U = propagator((a + a.conj().T) / 2, rng.uniform(0, 50))
        unitarity = max(unitarity, np.abs(U.conj().T @ U - np.eye(dim)).max())

    spin = protocol.SPIN
    qdrift = 0.0
    s = np.linspace(0, 100, 401)
    for lam in protocol.LAMBDAS:
        params = ModelParams(spin, lam)
        H = build_hamiltonian(params)
        for theta in (protocol.THETA_NORTH, protocol.THETA_SOUTH):
            states = evolve_states(coherent_state(spin, theta, math.pi), params, s)
            e = np.einsum("ki,ij,kj->k", states.conj(), H, states).real
            qdrift = max(qdrift, np.abs(e - e[0]).max() / max(abs(e[0]), 1.0))

    cdrift = 0.0
    grid = TimeGrid(1.0, 101)
    for lam, z0 in ((0.67, 0.7071), (2.70, 0.7071), (1.35, -0.3), (0.3, 0.9)):
        cdrift = max(cdrift, integrate(PhaseSpacePoint(z0, math.pi), lam, grid).energy_drift)

    ok = unitarity < 1e-12 and qdrift < 1e-10 and cdrift < 1e-8
    return Check(6, "conservation", ok,
                 f"unitarity {unitarity:.1e}, quantum energy drift {qdrift:.1e}, classical energy drift {cdrift:.1e}")


def check_symmetry() -> Check:
    spin = protocol.SPIN
    grid = TimeGrid(0.1, 200)
    worst = 0.0
    for lam in (0.0, 0.67, 1.35, 2.70):
        for theta in (0.3, math.pi / 4, 1.2):
            params = ModelParams(spin, lam)
            a = evolve_z_series(coherent_state(spin, theta, math.pi), params, grid).z
            b = evolve_z_series(coherent_state(spin, math.pi - theta, math.pi), params, grid).z
            worst = max(worst, np.abs(a + b).max())
    curve_ok = all(plus == -minus for _, plus, minus in bifurcation_curve(np.linspace(0, 5, 501)))

    rows = paper_sweep()
    with tempfile.TemporaryDirectory() as tmp:
        first = write_sweep(rows, Path(tmp) / "a").read_bytes()
        second = write_sweep(paper_sweep(), Path(tmp) / "b").read_bytes()
    bytes_ok = first == second
    ok = worst < 1e-9 and curve_ok and bytes_ok
    return Check(7, "symmetry and determinism", ok,
                 f"max |z(theta) + z(pi - theta)| = {worst:.1e}, z0+ = -z0-: {curve_ok}, sweep CSV byte-identical: {bytes_ok}")


def finite_difference_jacobian(p: PhaseSpacePoint, lam: float, step: float = 1e-6) -> np.ndarray:
    from .classical import rhs

    J = np.empty((2, 2))
    for j, (dz, dzeta) in enumerate(((step, 0.0), (0.0, step))):
        fp = rhs(PhaseSpacePoint(p.z + dz, p.zeta + dzeta), lam)
        fm = rhs(PhaseSpacePoint(p.z - dz, p.zeta - dzeta), lam)
        J[:, j] = (np.array(fp) - np.array(fm)) / (2 * step)
    return J


def check_jacobian() -> Check:
    rng = np.random.default_rng(7)
    worst = 0.0
    for lam in (0.0, 0.67, 1.0, 1.35, 2.70):
        for _ in range(100):
            p = PhaseSpacePoint(rng.uniform(-0.95, 0.95), rng.uniform(-math.pi, 3 * math.pi))
            worst = max(worst, np.abs(jacobian(p, lam) - finite_difference_jacobian(p, lam)).max())
    return Check(8, "Jacobian vs finite differences", worst < 1e-6, f"max deviation {worst:.1e}")


def check_lambda_mapping() -> Check:
    computed = protocol.computed_lambdas("paper")
    errs = [abs(c - p) for c, p in zip(computed, protocol.LAMBDAS)]
    worst = max(errs)
    listing = ", ".join(f"{c:.4f}" for c in computed)
    return Check(9, "lambda from t_pi (paper convention)", worst <= LAMBDA_MAP_TOL, f"[{listing}], max |diff| {worst:.4f}")


CHECKS = (
    check_pitchfork,
    check_bifurcation_values,
    check_trapping_band,
    check_rabi_limit,
    check_ehrenfest,
    check_conservation,
    check_symmetry,
    check_jacobian,
    check_lambda_mapping,
)


def run_all() -> list[Check]:
    return [check() for check in CHECKS]


def report(checks) -> str:
    lines = [c.line() for c in checks]
    passed = sum(c.passed for c in checks)
    lines.append(f"{passed}/{len(checks)} criteria passed")
    return "\n".join(lines) + "\n"
