"""Run configuration: command-line flags layered over an optional JSON file."""

from __future__ import annotations

import argparse
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import protocol
from .classical import EPS_POLE
from .quantum import CONVENTIONS, DEFAULT_BIN_WIDTH

MODES = ("quantum", "classical", "fixed-points", "sweep", "reproduce-paper")
DEFAULT_DELTA_S = math.pi / 10  # 5 us steps at t_pi = 100 us, paper convention

# config-file key -> RunConfig attribute
FILE_KEYS = {
    "spin": "spin_two_I",
    "lambda": "lam",
    "lambda_list": "lambda_list",
    "theta": "theta",
    "phi": "phi",
    "delta_s": "delta_s",
    "n_points": "n_points",
    "bin_width": "bin_width",
    "out": "output_path",
    "format": "format",
    "t_pi": "t_pi",
    "nu_q": "nu_q",
    "convention": "convention",
}


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    mode: str
    spin_two_I: int = 7
    lam: float | None = None
    lambda_list: list[float] = field(default_factory=lambda: list(protocol.LAMBDAS))
    theta: float = protocol.THETA_NORTH
    phi: float = protocol.PHI
    delta_s: float = DEFAULT_DELTA_S
    n_points: int = protocol.N_POINTS
    bin_width: float = DEFAULT_BIN_WIDTH
    output_path: str = "out"
    format: str = "csv"
    t_pi: float | None = None
    nu_q: float | None = None
    convention: str = "paper"
    delta_s_from_t_pi: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nmrjj", description="Quadrupolar-NMR Josephson-junction simulator.")
    p.add_argument("mode", choices=MODES)
    p.add_argument("--config", help="flat JSON object of option values; flags take precedence")
    p.add_argument("--spin", type=int, help="2I, e.g. 7 for I = 7/2 (default 7)")
    p.add_argument("--lambda", dest="lambda_", type=float, help="dimensionless coupling")
    p.add_argument("--lambda-list", type=_float_list, help="comma-separated couplings for sweep")
    p.add_argument("--theta", type=float, help="polar angle of the initial coherent state (rad)")
    p.add_argument("--phi", type=float, help="azimuth of the initial coherent state (rad)")
    p.add_argument("--delta-s", type=float, help="dimensionless time step w1*dt")
    p.add_argument("--n-points", type=int, help="number of time samples (default 45)")
    p.add_argument("--bin-width", type=float, help="histogram bin width in z (default 0.05)")
    p.add_argument("--t-pi", type=float, help="pi-pulse length in seconds (with --nu-q, instead of --lambda)")
    p.add_argument("--nu-q", type=float, help="quadrupolar frequency in Hz")
    p.add_argument("--convention", choices=CONVENTIONS, help="w1 = 2 pi/t_pi (paper) or pi/t_pi (standard)")
    p.add_argument("--out", help="output directory (default ./out)")
    p.add_argument("--format", choices=("csv", "json"))
    return p


def _load_file(path) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"config: cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"config: {path} is not valid JSON ({exc})")
    if not isinstance(doc, dict):
        raise UsageError("config: top level must be a JSON object")
    unknown = sorted(set(doc) - set(FILE_KEYS))
    if unknown:
        raise UsageError(f"config: unknown key(s) {', '.join(unknown)}")
    for key, value in doc.items():
        if isinstance(value, (dict, list)) and key != "lambda_list":
            raise UsageError(f"config: {key} must be a scalar")
    if isinstance(doc.get("lambda_list"), str):
        doc["lambda_list"] = _float_list(doc["lambda_list"])
    return doc


def parse_config(args: list[str], config_file: str | None = None) -> RunConfig:
    """Flags override config-file values, which override defaults."""
    ns = build_parser().parse_args(args)
    values = {}
    file_path = ns.config or config_file
    if file_path:
        for key, value in _load_file(file_path).items():
            values[FILE_KEYS[key]] = value
    flags = {
        "spin_two_I": ns.spin, "lam": ns.lambda_, "lambda_list": ns.lambda_list,
        "theta": ns.theta, "phi": ns.phi, "delta_s": ns.delta_s, "n_points": ns.n_points,
        "bin_width": ns.bin_width, "t_pi": ns.t_pi, "nu_q": ns.nu_q,
        "convention": ns.convention, "output_path": ns.out, "format": ns.format,
    }
    values.update({k: v for k, v in flags.items() if v is not None})
    explicit_delta_s = "delta_s" in values
    cfg = RunConfig(mode=ns.mode.replace("-", "_"), **values)
    if cfg.t_pi is not None and not explicit_delta_s:
        cfg.delta_s_from_t_pi = True
    validate(cfg)
    return cfg


def _require(cond, name, message):
    if not cond:
        raise UsageError(f"{name}: {message}")


def _number(name, value, integer=False):
    kinds = (int,) if integer else (int, float)
    _require(isinstance(value, kinds) and not isinstance(value, bool), name, f"expected a number, got {value!r}")
    _require(math.isfinite(value), name, "must be finite")


def validate(cfg: RunConfig) -> None:
    """Check every field before any computation starts."""
    _number("spin", cfg.spin_two_I, integer=True)
    _require(cfg.spin_two_I >= 1, "spin", f"2I must be >= 1, got {cfg.spin_two_I}")
    for name in ("theta", "phi", "delta_s", "bin_width"):
        _number(name, getattr(cfg, name))
    _number("n_points", cfg.n_points, integer=True)
    _require(0 <= cfg.theta <= math.pi, "theta", "must lie in [0, pi]")
    _require(0 <= cfg.phi < 2 * math.pi, "phi", "must lie in [0, 2 pi)")
    _require(cfg.delta_s > 0, "delta_s", "must be > 0")
    _require(cfg.n_points >= 2, "n_points", "must be >= 2")
    _require(cfg.bin_width > 0, "bin_width", "must be > 0")
    _require(cfg.format in ("csv", "json"), "format", "must be csv or json")
    _require(cfg.convention in CONVENTIONS, "convention", f"must be one of {CONVENTIONS}")
    _require(isinstance(cfg.output_path, str) and cfg.output_path, "out", "must be a path")

    physical = cfg.t_pi is not None or cfg.nu_q is not None
    if physical:
        _require(cfg.t_pi is not None and cfg.nu_q is not None, "t_pi", "--t-pi and --nu-q go together")
        _number("t_pi", cfg.t_pi)
        _number("nu_q", cfg.nu_q)
        _require(cfg.t_pi > 0, "t_pi", "must be > 0")
        _require(cfg.nu_q > 0, "nu_q", "must be > 0")
        _require(cfg.lam is None, "lambda", "give either --lambda or --t-pi/--nu-q, not both")

    if cfg.mode in ("quantum", "classical", "fixed_points"):
        _require(cfg.lam is not None or physical, "lambda", f"required for {cfg.mode}")
        if cfg.lam is not None:
            _number("lambda", cfg.lam)
    if cfg.mode == "fixed_points" and cfg.lam is not None:
        _require(cfg.lam >= 0, "lambda", "must be >= 0")
    if cfg.mode == "classical":
        _require(abs(math.cos(cfg.theta)) < 1 - EPS_POLE, "theta", "classical start may not sit on a pole")
    if cfg.mode == "sweep":
        _require(isinstance(cfg.lambda_list, list) and len(cfg.lambda_list) > 0, "lambda_list", "must be non-empty")
        for lam in cfg.lambda_list:
            _number("lambda_list", lam)
            _require(lam >= 0, "lambda_list", f"values must be >= 0, got {lam}")
