"""Command-line entry point.

Exit status: 0 success, 2 usage error, 3 I/O error, 4 numeric failure.
"""

from __future__ import annotations

import math
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import acceptance, protocol
from .bifurcation import bifurcation_curve, fixed_points, run_sweep
from .classical import PhaseSpacePoint, classical_temporal_mean, integrate
from .config import RunConfig, UsageError, parse_config
from .errors import DomainError, NumericError, PoleError
from .io import (
    atomic_write,
    write_bifurcation_curve,
    write_fixed_points,
    write_histogram,
    write_manifest,
    write_series,
    write_sweep,
)
from .quantum import (
    ModelParams,
    TimeGrid,
    delta_s_from_physical,
    evolve_z_series,
    lambda_from_physical,
    temporal_stats,
)
from .spin import SpinNumber, coherent_state

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_NUMERIC = 0, 2, 3, 4

CURVE_LAMBDAS = np.round(np.linspace(0.0, 3.0, 301), 10)


def resolve_lambda(cfg: RunConfig) -> float:
    if cfg.lam is not None:
        return float(cfg.lam)
    return lambda_from_physical(SpinNumber(cfg.spin_two_I), cfg.nu_q, cfg.t_pi, cfg.convention)


def resolve_grid(cfg: RunConfig) -> TimeGrid:
    if cfg.delta_s_from_t_pi:
        delta_s = delta_s_from_physical(protocol.DELTA_TAU_S, cfg.t_pi, cfg.convention)
    else:
        delta_s = cfg.delta_s
    return TimeGrid(delta_s, cfg.n_points)


def _tag(lam: float) -> str:
    return f"L{lam:.2f}"


def run_quantum(cfg: RunConfig, out: Path) -> tuple[list[Path], dict]:
    spin = SpinNumber(cfg.spin_two_I)
    params = ModelParams(spin, resolve_lambda(cfg))
    series = evolve_z_series(coherent_state(spin, cfg.theta, cfg.phi), params, resolve_grid(cfg))
    stats = temporal_stats(series, cfg.bin_width)
    files = [
        write_series(series, out / "quantum_series", cfg.format),
        write_histogram(stats, out / "quantum_histogram", cfg.format),
    ]
    results = {"lambda": params.lam, "z_mean": stats.z_mean, "z_std": stats.z_std, "g0": stats.g0,
               "flags": list(series.flags)}
    return files, results


def run_classical(cfg: RunConfig, out: Path) -> tuple[list[Path], dict]:
    lam = resolve_lambda(cfg)
    try:
        traj = integrate(PhaseSpacePoint.from_angles(cfg.theta, cfg.phi), lam, resolve_grid(cfg))
    except PoleError as exc:
        if exc.trajectory is not None and len(exc.trajectory):
            write_series(exc.trajectory, out / "classical_trajectory_partial", cfg.format)
        raise
    files = [write_series(traj, out / "classical_trajectory", cfg.format)]
    results = {"lambda": lam, "z_mean": classical_temporal_mean(traj), "energy_drift": traj.energy_drift}
    return files, results


def run_fixed_points(cfg: RunConfig, out: Path) -> tuple[list[Path], dict]:
    lam = resolve_lambda(cfg)
    points = fixed_points(lam)
    files = [write_fixed_points(points, lam, out / "fixed_points", cfg.format)]
    results = {"lambda": lam, "points": {p.label: p.stability.value for p in points}}
    return files, results


def run_sweep_mode(cfg: RunConfig, out: Path) -> tuple[list[Path], dict]:
    rows = run_sweep(SpinNumber(cfg.spin_two_I), cfg.lambda_list, resolve_grid(cfg),
                     cfg.theta, math.pi - cfg.theta, cfg.phi, cfg.bin_width)
    files = [
        write_sweep(rows, out / "sweep", cfg.format),
        write_bifurcation_curve(bifurcation_curve(sorted(set(cfg.lambda_list))), out / "bifurcation_curve", cfg.format),
    ]
    return files, {"rows": len(rows)}


def reproduce_paper(out, fmt: str = "csv") -> tuple[list[Path], dict]:
    """Both hemispheres at every calibrated pulse length, the lambda sweep and the acceptance report."""
    out = Path(out)
    spin = protocol.SPIN
    files = []
    for lam, t_pi, grid in zip(protocol.LAMBDAS, protocol.T_PI_S, protocol.grids()):
        params = ModelParams(spin, lam)
        for hemisphere, theta in (("north", protocol.THETA_NORTH), ("south", protocol.THETA_SOUTH)):
            name = f"{_tag(lam)}_{hemisphere}"
            series = evolve_z_series(coherent_state(spin, theta, protocol.PHI), params, grid)
            traj = integrate(PhaseSpacePoint.from_angles(theta, protocol.PHI), lam, grid)
            files.append(write_series(series, out / "series" / f"quantum_{name}", fmt))
            files.append(write_series(traj, out / "classical" / f"classical_{name}", fmt))
            files.append(write_histogram(temporal_stats(series), out / "histograms" / f"histogram_{name}", fmt))

    rows = acceptance.paper_sweep()
    files.append(write_sweep(rows, out / "sweep", fmt))
    files.append(write_bifurcation_curve(bifurcation_curve(CURVE_LAMBDAS), out / "bifurcation_curve", fmt))

    checks = [acceptance.check_trapping_band(rows)] + [c() for c in acceptance.CHECKS if c is not acceptance.check_trapping_band]
    checks.sort(key=lambda c: c.number)
    text = acceptance.report(checks)
    files.append(atomic_write(out / "acceptance_report.txt", text))
    results = {
        "lambda_convention": protocol.CONVENTION,
        "acceptance": {str(c.number): c.passed for c in checks},
        "all_passed": all(c.passed for c in checks),
    }
    return files, results


RUNNERS = {
    "quantum": run_quantum,
    "classical": run_classical,
    "fixed_points": run_fixed_points,
    "sweep": run_sweep_mode,
}


def run(cfg: RunConfig) -> list[Path]:
    out = Path(cfg.output_path)
    started = datetime.now(timezone.utc)
    t0 = time.perf_counter()
    try:
        if cfg.mode == "reproduce_paper":
            files, results = reproduce_paper(out, cfg.format)
            print(Path(files[-1]).read_text(), end="")
        else:
            files, results = RUNNERS[cfg.mode](cfg, out)
    except (NumericError, PoleError, np.linalg.LinAlgError) as exc:
        # keep whatever was written and say why the run stopped
        if out.is_dir():
            partial = [f for f in out.rglob("*") if f.is_file() and f.name != "manifest.json"]
            write_manifest(out, cfg.to_dict(), partial, started_utc=started.isoformat(timespec="seconds"),
                           failure=f"{type(exc).__name__}: {exc}")
        raise
    extra = {
        "started_utc": started.isoformat(timespec="seconds"),
        "wall_seconds": round(time.perf_counter() - t0, 3),
        "results": results,
    }
    if cfg.mode in RUNNERS:
        extra["delta_s_used"] = resolve_grid(cfg).delta_s
    if cfg.t_pi is not None:
        extra["lambda_convention"] = cfg.convention
        extra["lambda_from_physical"] = resolve_lambda(cfg)
    files.append(write_manifest(out, cfg.to_dict(), files, **extra))
    return files


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(list(argv))
    except UsageError as exc:
        print(f"nmrjj: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        files = run(cfg)
    except DomainError as exc:
        print(f"nmrjj: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"nmrjj: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (NumericError, PoleError, np.linalg.LinAlgError) as exc:
        print(f"nmrjj: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    for f in files:
        print(f)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
