"""CSV/JSON writers and the run manifest.

Data files hold no timestamps and use 17 significant digits, so identical
inputs give byte-identical files.  Timestamps and checksums go in the
manifest only.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Sequence

import numpy as np

from .bifurcation import FixedPoint, SweepRow
from .classical import ClassicalTrajectory
from .quantum import TemporalStats, ZSeries

FORMATS = ("csv", "json")
SWEEP_COLUMNS = ("lambda", "hemisphere", "z_mean_quantum", "z_std_quantum", "z_mean_classical", "z0_theory")


def fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    x = float(x)
    return "0" if x == 0 else format(x, ".17g")


def atomic_write(path: Path, text: str) -> Path:
    """Write via a temporary file in the same directory, then rename over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def _to_python(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return 0.0 if v == 0 else v
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, (str, int)) or v is None:
        return v
    if isinstance(v, np.ndarray):
        return [_to_python(x) for x in v.tolist()]
    return str(v)


def _with_ext(path: Path, ext: str) -> Path:
    # names like quantum_L0.67_north contain dots, so with_suffix is unusable
    return path if path.name.endswith(f".{ext}") else path.with_name(f"{path.name}.{ext}")


def write_table(path, columns: Sequence[str], rows, fmt_: str = "csv") -> Path:
    """Write rows (sequences aligned with ``columns``) as CSV or column-keyed JSON."""
    path = Path(path)
    rows = [list(r) for r in rows]
    if fmt_ == "csv":
        lines = [",".join(columns)]
        lines += [",".join(fmt(v) for v in r) for r in rows]
        return atomic_write(_with_ext(path, "csv"), "\n".join(lines) + "\n")
    if fmt_ == "json":
        doc = {c: [_to_python(r[i]) for r in rows] for i, c in enumerate(columns)}
        return atomic_write(_with_ext(path, "json"), json.dumps(doc, indent=1) + "\n")
    raise ValueError(f"unknown format {fmt_!r}")


def read_table(path) -> dict[str, list]:
    """Inverse of write_table; CSV numeric fields come back as floats."""
    path = Path(path)
    if path.suffix == ".json":
        return json.loads(path.read_text())
    lines = path.read_text().splitlines()
    columns = lines[0].split(",")
    out = {c: [] for c in columns}
    for line in lines[1:]:
        for c, v in zip(columns, line.split(",")):
            try:
                out[c].append(float(v))
            except ValueError:
                out[c].append(v)
    return out


def write_series(series: ZSeries | ClassicalTrajectory, path, fmt_: str = "csv") -> Path:
    if isinstance(series, ClassicalTrajectory):
        columns = ("s", "z", "zeta", "energy")
        rows = zip(series.s, series.z, series.zeta, series.energy)
    else:
        columns = ("s", "z")
        rows = zip(series.s, series.z)
    return write_table(path, columns, rows, fmt_)


def write_histogram(stats: TemporalStats, path, fmt_: str = "csv") -> Path:
    centers = stats.bin_centers
    rows = zip(centers, stats.counts, stats.gaussian(centers))
    return write_table(path, ("bin_center", "count", "gaussian"), rows, fmt_)


def sort_sweep(rows: Sequence[SweepRow]) -> list[SweepRow]:
    return sorted(rows, key=lambda r: (r.lam, r.hemisphere))


def write_sweep(rows: Sequence[SweepRow], path, fmt_: str = "csv") -> Path:
    if not rows:
        raise ValueError("no sweep rows to write")
    table = [
        (r.lam, r.hemisphere, r.z_mean_quantum, r.z_std_quantum, r.z_mean_classical, r.z0_theory)
        for r in sort_sweep(rows)
    ]
    return write_table(path, SWEEP_COLUMNS, table, fmt_)


def write_bifurcation_curve(curve, path, fmt_: str = "csv") -> Path:
    return write_table(path, ("lambda", "z0_plus", "z0_minus"), curve, fmt_)


def write_fixed_points(points: Sequence[FixedPoint], lam: float, path, fmt_: str = "csv") -> Path:
    columns = ("lambda", "label", "z", "zeta", "stability", "eig1_re", "eig1_im", "eig2_re", "eig2_im")
    rows = [
        (lam, p.label, p.point.z, p.point.zeta, p.stability.value,
         p.eigenvalues[0].real, p.eigenvalues[0].imag, p.eigenvalues[1].real, p.eigenvalues[1].imag)
        for p in points
    ]
    return write_table(path, columns, rows, fmt_)


def sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def write_manifest(out_dir, config: dict, files: Sequence[Path], **extra) -> Path:
    """manifest.json: config echo, version, checksums of every output, and ``extra``."""
    from . import __version__

    out_dir = Path(out_dir)
    doc = {
        "tool": "nmrjj",
        "version": __version__,
        "config": config,
        **extra,
        "files": {str(Path(f).relative_to(out_dir)): sha256(f) for f in sorted(files)},
    }
    return atomic_write(out_dir / "manifest.json", json.dumps(doc, indent=2, default=_to_python) + "\n")
