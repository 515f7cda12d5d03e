"""Command-line entry point: ``phaseless <command> --config <file or name>``.

Every run writes ``manifest.json`` to the output directory with the
effective configuration, the library version and the report summary.
Exit codes: 0 success, 1 verification failure, 2 usage or config error.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

import numpy as np

from .constructions import build_pair, build_real_pair, gaussian_oracle_pair
from .errors import ConfigError, PhaselessError
from .frft import FrftOrder, HermiteBasis
from .io import emit_field_csv, emit_heatmap_pgm, emit_report_json, write_json, FieldOutput
from .lattice import (Lattice, lattice_in_line_family, lattice_points_in_box, superlattice_embed)
from .numerics import Grid, ToleranceProfile, WindowSpec, sample_analytic
from .report import VerificationReport
from .sequences import CoefficientSequence
from .verification import (_non_equivalence, operator_identity_suite, verify_equal_on_points,
                           verify_field, verify_pair)
from .constructions import SIConfig
from .operators import stft_grid

log = logging.getLogger("phaseless")

COMMANDS = ("synth", "spectrogram", "verify-lines", "verify-lattice", "real-pair",
            "gauss-oracle", "props", "field")
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _version() -> str:
    from . import __version__
    return __version__


# --- configuration ----------------------------------------------------------


def _num(d: dict, key: str, default=None, positive=False, integer=False):
    v = d.get(key, default)
    if v is None:
        raise ConfigError(f"missing required field {key!r}")
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"field {key!r} must be a number, got {v!r}")
    if not math.isfinite(v):
        raise ConfigError(f"field {key!r} must be finite")
    if positive and not v > 0:
        raise ConfigError(f"field {key!r} must be positive, got {v}")
    if integer:
        if int(v) != v:
            raise ConfigError(f"field {key!r} must be an integer")
        return int(v)
    return float(v)


def _pair_of(v, key: str):
    if not (isinstance(v, (list, tuple)) and len(v) == 2):
        raise ConfigError(f"field {key!r} must be a pair of numbers")
    return tuple(_num({key: x}, key) for x in v)


def _rect(v, key="rectangle"):
    if not (isinstance(v, (list, tuple)) and len(v) == 4):
        raise ConfigError(f"field {key!r} must be [x0, x1, omega0, omega1]")
    r = tuple(_num({key: x}, key) for x in v)
    if not (r[0] < r[1] and r[2] < r[3]):
        raise ConfigError(f"field {key!r} must have x0 < x1 and omega0 < omega1")
    return r


@dataclass
class RunConfig:
    """Validated run configuration (see ``docs/formats.md`` for the schema)."""

    command: Optional[str] = None
    window: WindowSpec = field(default_factory=WindowSpec.gaussian)
    coefficients: CoefficientSequence = field(default_factory=lambda: CoefficientSequence(-1, (1, 0, 1j)))
    step: float = 1.0
    theta: float = 0.0
    shift: tuple = (0.0, 0.0)
    half_width: float = 8.0
    dt: float = 1.0 / 128
    rectangle: tuple = (-2.0, 2.0, -2.0, 2.0)
    nx: int = 129
    ny: int = 97
    gamma: float = 0.5
    x_samples: tuple = (-2.0, 2.0, 33)
    n_range: tuple = (-2, 2)
    lattice: Optional[dict] = None
    box: tuple = (-2.0, 2.0, -2.0, 2.0)
    alpha: float = 1.0
    beta: float = 1.0
    rel_tol: float = 1e-6
    abs_tol: float = 0.0
    synthesis: str = "auto"
    max_order: int = 64
    seed: int = 0
    name: str = "run"
    raw: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        if not isinstance(d, dict):
            raise ConfigError("configuration must be a JSON object")
        cfg = cls(raw=dict(d))
        if "command" in d:
            if d["command"] not in COMMANDS:
                raise ConfigError(f"unknown command {d['command']!r}")
            cfg.command = d["command"]
        if "name" in d:
            cfg.name = str(d["name"])
        try:
            if "window" in d:
                cfg.window = WindowSpec.from_dict(d["window"])
            if "coefficients" in d:
                rows = d["coefficients"]
                if not isinstance(rows, list) or not all(isinstance(r, list) and len(r) in (2, 3) for r in rows):
                    raise ConfigError("coefficients must be a list of [k, re, im] rows")
                cfg.coefficients = CoefficientSequence.from_list(rows)
        except PhaselessError as exc:
            raise ConfigError(str(exc)) from exc
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid window or coefficients: {exc}") from exc
        cfg.step = _num(d, "step", cfg.step, positive=True)
        cfg.theta = _num(d, "theta", cfg.theta)
        if "shift" in d:
            cfg.shift = _pair_of(d["shift"], "shift")
        grid = d.get("grid", {})
        if not isinstance(grid, dict):
            raise ConfigError("grid must be an object")
        cfg.half_width = _num(grid, "half_width", cfg.half_width, positive=True)
        cfg.dt = _num(grid, "dt", cfg.dt, positive=True)
        if cfg.half_width / cfg.dt > 5e6:
            raise ConfigError("grid is too large")
        if "rectangle" in d:
            cfg.rectangle = _rect(d["rectangle"])
        fld = d.get("field", {})
        cfg.nx = _num(fld, "nx", cfg.nx, positive=True, integer=True)
        cfg.ny = _num(fld, "ny", cfg.ny, positive=True, integer=True)
        cfg.gamma = _num(fld, "gamma", cfg.gamma, positive=True)
        lines = d.get("lines", {})
        if "x_samples" in lines:
            xs = lines["x_samples"]
            if not (isinstance(xs, list) and len(xs) == 3):
                raise ConfigError("lines.x_samples must be [start, stop, num]")
            cfg.x_samples = (_num({"x": xs[0]}, "x"), _num({"x": xs[1]}, "x"),
                             _num({"num": xs[2]}, "num", positive=True, integer=True))
        if "n_range" in lines:
            nr = lines["n_range"]
            if not (isinstance(nr, list) and len(nr) == 2):
                raise ConfigError("lines.n_range must be [n_min, n_max]")
            cfg.n_range = (_num({"n": nr[0]}, "n", integer=True), _num({"n": nr[1]}, "n", integer=True))
        if d.get("lattice") is not None:
            lat = d["lattice"]
            if not isinstance(lat, dict) or "generator" not in lat:
                raise ConfigError("lattice must be an object with a generator")
            cfg.lattice = lat
            if "box" in lat:
                cfg.box = _rect(lat["box"], "lattice.box")
        real = d.get("real", {})
        cfg.alpha = _num(real, "alpha", cfg.alpha, positive=True)
        cfg.beta = _num(real, "beta", _num(d, "beta", cfg.beta, positive=True), positive=True)
        tol = d.get("tolerances", {})
        cfg.rel_tol = _num(tol, "rel_tol", cfg.rel_tol)
        cfg.abs_tol = _num(tol, "abs_tol", cfg.abs_tol)
        if cfg.rel_tol < 0 or cfg.abs_tol < 0 or (cfg.rel_tol == 0 and cfg.abs_tol == 0):
            raise ConfigError("tolerances must be non-negative with one of them positive")
        cfg.synthesis = d.get("synthesis", cfg.synthesis)
        if cfg.synthesis not in ("auto", "hermite", "closed_form", "translate"):
            raise ConfigError(f"unknown synthesis method {cfg.synthesis!r}")
        cfg.max_order = _num(d, "max_order", cfg.max_order, positive=True, integer=True)
        cfg.seed = _num(d, "seed", cfg.seed, integer=True)
        if cfg.seed < 0:
            raise ConfigError("seed must be non-negative")
        return cfg

    @property
    def grid(self) -> Grid:
        return Grid.symmetric(self.half_width, self.dt)

    @property
    def tolerance(self) -> ToleranceProfile:
        return ToleranceProfile(abs_tol=self.abs_tol, rel_tol=self.rel_tol)

    def to_dict(self) -> dict:
        lat = dict(self.lattice) if self.lattice else None
        return {
            "command": self.command, "name": self.name, "window": self.window.to_dict(),
            "coefficients": self.coefficients.to_list(), "step": self.step, "theta": self.theta,
            "shift": list(self.shift), "grid": {"half_width": self.half_width, "dt": self.dt},
            "rectangle": list(self.rectangle),
            "field": {"nx": self.nx, "ny": self.ny, "gamma": self.gamma},
            "lines": {"x_samples": list(self.x_samples), "n_range": list(self.n_range)},
            "lattice": lat, "real": {"alpha": self.alpha, "beta": self.beta},
            "tolerances": {"rel_tol": self.rel_tol, "abs_tol": self.abs_tol},
            "synthesis": self.synthesis, "max_order": self.max_order, "seed": self.seed,
        }


def load_config(ref: Optional[str]) -> RunConfig:
    """Load a config from a path, or a packaged config by name (``fig1``)."""
    if ref is None:
        return RunConfig()
    path = Path(ref)
    try:
        if path.exists():
            text = path.read_text()
        else:
            name = ref if ref.endswith(".json") else f"{ref}.json"
            res = resources.files("phaseless").joinpath("configs", name)
            if not res.is_file():
                raise ConfigError(f"config {ref!r} not found (no such file or packaged config)")
            text = res.read_text()
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {ref}: {exc}") from exc
    except OSError as exc:
        raise ConfigError(f"cannot read {ref}: {exc}") from exc
    return RunConfig.from_dict(data)


def packaged_configs() -> list:
    root = resources.files("phaseless").joinpath("configs")
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def worker_count() -> int:
    cpus = os.cpu_count() or 1
    env = os.environ.get("PHASELESS_THREADS")
    if env is None:
        return 1
    try:
        cap = int(env)
    except ValueError:
        raise ConfigError(f"PHASELESS_THREADS must be an integer, got {env!r}")
    return max(1, min(cap, cpus))


# --- commands ---------------------------------------------------------------


def _basis(cfg: RunConfig) -> Optional[HermiteBasis]:
    if FrftOrder(cfg.theta).special == "identity" or cfg.synthesis in ("closed_form", "translate"):
        return None
    return HermiteBasis(cfg.grid, cfg.max_order, max(cfg.max_order, 64))


def _window(cfg: RunConfig):
    return sample_analytic(cfg.window, cfg.grid)


def _pair(cfg: RunConfig):
    g = _window(cfg)
    pair = build_pair(SIConfig(g, cfg.step, FrftOrder(cfg.theta), cfg.shift), cfg.coefficients,
                      _basis(cfg), cfg.synthesis)
    return g, pair


def _x_samples(cfg: RunConfig) -> np.ndarray:
    a, b, n = cfg.x_samples
    return np.linspace(a, b, n)


def cmd_synth(cfg: RunConfig, out: Path):
    g, pair = _pair(cfg)
    path = out / f"{cfg.name}_signals.csv"
    t = g.grid.points
    with open(path, "w") as fh:
        fh.write("t,f1_re,f1_im,f2_re,f2_im\n")
        for tj, a, b in zip(t, pair.f1.values, pair.f2.values):
            fh.write(f"{tj:.17g},{a.real:.17g},{a.imag:.17g},{b.real:.17g},{b.imag:.17g}\n")
    fam = pair.refined_family
    rep = VerificationReport.build("synth", {}, None, g.grid.n,
                                   notes=f"method={pair.diagnostics['method']}; lines spacing={fam.spacing:g}")
    return rep, [path.name]


def cmd_spectrogram(cfg: RunConfig, out: Path):
    g, pair = _pair(cfg)
    x0, x1, w0, w1 = cfg.rectangle
    V = stft_grid([pair.f1], g, np.linspace(x0, x1, cfg.nx), np.linspace(w0, w1, cfg.ny),
                  workers=worker_count())
    fld = FieldOutput(cfg.rectangle, cfg.nx, cfg.ny, np.abs(V[0]))
    csv, pgm = out / f"{cfg.name}_spectrogram.csv", out / f"{cfg.name}_spectrogram.pgm"
    emit_field_csv(fld, csv, column="S")
    emit_heatmap_pgm(fld, pgm, cfg.gamma)
    rep = VerificationReport.build("spectrogram", {}, None, cfg.nx * cfg.ny, notes=f"peak={fld.q_max:.6e}")
    return rep, [csv.name, pgm.name]


def cmd_verify_lines(cfg: RunConfig, out: Path):
    g, pair = _pair(cfg)
    rep = verify_pair(pair, g, _x_samples(cfg), cfg.n_range, cfg.tolerance)
    return rep, []


def _lattice(cfg: RunConfig) -> Lattice:
    if cfg.lattice is None:
        raise ConfigError("this command needs a 'lattice' section")
    lat_cfg = cfg.lattice
    shift = _pair_of(lat_cfg.get("shift", [0, 0]), "lattice.shift")
    gen = lat_cfg["generator"]
    try:
        if lat_cfg.get("exact", False):
            return Lattice.from_rationals(gen, shift)
        return Lattice(np.array(gen, dtype=float), shift)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"invalid lattice generator: {exc}") from exc


def cmd_verify_lattice(cfg: RunConfig, out: Path):
    lat = _lattice(cfg)
    fam = lattice_in_line_family(lat)
    if fam.single:
        raise ConfigError("lattice generator is degenerate; pick any family through its line")
    g = _window(cfg)
    si = SIConfig(g, 1.0 / fam.spacing, FrftOrder(fam.theta), lat.shift)
    basis = None if si.theta.special == "identity" or cfg.synthesis == "closed_form" else \
        HermiteBasis(cfg.grid, cfg.max_order, max(cfg.max_order, 64))
    pair = build_pair(si, cfg.coefficients, basis, cfg.synthesis)
    pts = lattice_points_in_box(lat, cfg.box).points
    eq = verify_equal_on_points(pair.f1, pair.f2, g, pts, cfg.tolerance)
    neq = _non_equivalence(pair, "trapezoid", 1e-3)
    rep = VerificationReport.build("lattice", {}, None, len(pts),
                                   notes=f"family theta={fam.theta:g} spacing={fam.spacing:g}",
                                   children=(eq, neq))
    return rep, []


def cmd_real_pair(cfg: RunConfig, out: Path):
    g = _window(cfg)
    basis = HermiteBasis(cfg.grid, cfg.max_order, max(cfg.max_order, 64)) if cfg.synthesis in ("auto", "hermite") else None
    if cfg.lattice is not None:
        lat = _lattice(cfg)
        emb = superlattice_embed(lat)
        alpha = abs(float(emb.lattice.generator[0, 0]))
        beta = abs(float(emb.lattice.generator[1, 1]))
        note = f"superlattice diag({alpha:g}, {beta:g}), witness={emb.witness}"
    else:
        lat = Lattice.rectangular(cfg.alpha, cfg.beta)
        alpha, beta, note = cfg.alpha, cfg.beta, "rectangular lattice"
    if any(lat.shift):
        raise ConfigError("real-valued pairs are built for unshifted lattices")
    coeffs = None if "coefficients" not in cfg.raw else cfg.coefficients
    pair = build_real_pair(g, alpha, beta, basis, coeffs, cfg.synthesis)
    pts = lattice_points_in_box(lat, cfg.box).points
    eq = verify_equal_on_points(pair.f1, pair.f2, g, pts, cfg.tolerance)
    imag = VerificationReport.build("real_valued", {"max_imag_ratio": pair.diagnostics["max_imag_ratio"]}, 1e-8)
    neq = _non_equivalence(pair, "trapezoid", 1e-3)
    rep = VerificationReport.build("real_pair", {}, None, len(pts), notes=note, children=(eq, imag, neq))
    return rep, []


def cmd_gauss_oracle(cfg: RunConfig, out: Path):
    pair = gaussian_oracle_pair(cfg.beta, cfg.grid)
    g = sample_analytic(WindowSpec.gaussian(), cfg.grid)
    synth = VerificationReport.build("closed_form_match", {"relative_l2": pair.diagnostics["synthesis_error"]}, 1e-8)
    rep = verify_pair(pair, g, _x_samples(cfg), cfg.n_range, cfg.tolerance)
    eq, neq, nontriv = rep.children
    neq = VerificationReport.build("non_equivalence", neq.residuals, 0.1, notes=neq.notes, bound="min")
    rep = VerificationReport.build("gauss_oracle", {}, None, rep.sample_points, notes=f"beta={cfg.beta:g}",
                                   children=(synth, eq, neq, nontriv))
    return rep, []


def cmd_props(cfg: RunConfig, out: Path):
    rep = operator_identity_suite(cfg.seed, cfg.tolerance, cfg.grid)
    return rep, []


def cmd_field(cfg: RunConfig, out: Path):
    g, pair = _pair(cfg)
    rep, fld = verify_field(pair, g, cfg.rectangle, cfg.nx, cfg.ny, worker_count(), line_tol=cfg.rel_tol)
    neq = _non_equivalence(pair, "trapezoid", 1e-3)
    rep = VerificationReport.build("figure", {}, None, rep.sample_points, notes=rep.notes,
                                   children=rep.children + (neq,))
    csv, pgm = out / f"{cfg.name}_Q.csv", out / f"{cfg.name}_Q.pgm"
    emit_field_csv(fld, csv)
    emit_heatmap_pgm(fld, pgm, cfg.gamma)
    return rep, [csv.name, pgm.name]


HANDLERS = {
    "synth": cmd_synth, "spectrogram": cmd_spectrogram, "verify-lines": cmd_verify_lines,
    "verify-lattice": cmd_verify_lattice, "real-pair": cmd_real_pair,
    "gauss-oracle": cmd_gauss_oracle, "props": cmd_props, "field": cmd_field,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="phaseless", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", help="JSON config path or packaged name (" + ", ".join(packaged_configs()) + ")")
    ap.add_argument("--out", default="out", help="output directory (default: ./out)")
    ap.add_argument("--seed", type=int, help="override the config seed")
    ap.add_argument("--tol", type=float, help="override the relative tolerance")
    ap.add_argument("--quiet", action="store_true", help="print nothing but errors")
    return ap


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO, format="%(message)s")
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            if args.seed < 0:
                raise ConfigError("--seed must be non-negative")
            cfg.seed = args.seed
        if args.tol is not None:
            if not args.tol > 0:
                raise ConfigError("--tol must be positive")
            cfg.rel_tol = args.tol
        cfg.command = args.command
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        report, files = HANDLERS[args.command](cfg, out)
        emit_report_json(report, out / f"{cfg.name}_report.json")
        files = files + [f"{cfg.name}_report.json"]
        write_json({
            "command": args.command, "config": cfg.to_dict(), "version": _version(),
            "passed": report.passed, "summary": report.summary_lines(), "outputs": files,
        }, out / "manifest.json")
    except ConfigError as exc:
        print(f"phaseless: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PhaselessError as exc:
        print(f"phaseless: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"phaseless: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for line in report.summary_lines():
        log.info(line)
    return EXIT_OK if report.passed else EXIT_FAIL


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
