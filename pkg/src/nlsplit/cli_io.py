"""
Flat key=value configuration files, deterministic CSV emission, the run
manifest, and the command-line entry point.

CSV schemas (the stable public contract; the plotting frontend consumes
these verbatim):

* convergence.csv   tau, n_steps, sup_error_l2, final_error_l2
                    (rows sorted by decreasing tau)
* trajectory.csv    t, mass, energy, pseudoconf_total, j_norm_sq,
                    l_r0_norm, compensated_decay
* scattering.csv    t, cauchy_l2, sigma_diff
* invariants.csv    name, measured, bound, pass
* uniformity.csv    horizon, sup_error_l2, sup_error_l2_unfiltered
                    (auxiliary; not consumed by the plotting frontend)

All floats are written with Python's shortest round-trip repr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    BoundaryLeakError,
    ConfigParseError,
    ConstraintError,
    NonFiniteError,
    NlsplitError,
)
from .experiments import (
    StudyConfig,
    run_convergence_study,
    run_decay_study,
    run_invariant_suite,
    run_scattering_study,
    run_uniformity_study,
    trajectory_diagnostics,
)
from .flows import evolve

ARTIFACT_VERSION = "0.1.0"

#: Config keys, their parsers, and defaults (None = computed later).
_BOOL_WORDS = {"on": True, "true": True, "1": True, "off": False, "false": False, "0": False}


def _parse_bool(text: str) -> bool:
    try:
        return _BOOL_WORDS[text.strip().lower()]
    except KeyError:
        raise ValueError(f"expected on/off, got {text!r}") from None


def _parse_tau_list(text: str) -> tuple[float, ...]:
    values = tuple(float(part) for part in text.replace("[", "").replace("]", "").split(",") if part.strip())
    if not values:
        raise ValueError("empty tau_list")
    return values


_KEY_PARSERS = {
    "dimension": int,
    "points": int,
    "half_width": float,
    "sigma": float,
    "tau_list": _parse_tau_list,
    "t_final": float,
    "datum": str,
    "seed": int,
    "filter": _parse_bool,
    "reference_refinement": int,
    "checkpoint_stride": int,
    "rough_exponent": float,
}

_REQUIRED_KEYS = ("dimension", "sigma", "tau_list", "t_final")


def _grid_defaults(t_final: float) -> tuple[int, float]:
    """Default (points, half_width): the box grows past t = 20 so dispersion stays inside."""
    if t_final > 20.0:
        return 8192, 128.0
    return 4096, 64.0


def parse_config_text(text: str, source: str = "<config>") -> StudyConfig:
    """Parse flat ``key = value`` lines; '#' starts a comment."""
    raw: dict[str, object] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigParseError(f"{source}:{lineno}: expected 'key = value', got {line!r}")
        key, _, value = stripped.partition("=")
        key = key.strip()
        if key not in _KEY_PARSERS:
            raise ConfigParseError(f"{source}:{lineno}: unknown key {key!r}")
        if key in raw:
            raise ConfigParseError(f"{source}:{lineno}: duplicate key {key!r}")
        try:
            raw[key] = _KEY_PARSERS[key](value.strip())
        except ValueError as exc:
            raise ConfigParseError(f"{source}:{lineno}: bad value for {key!r}: {exc}") from None
    for key in _REQUIRED_KEYS:
        if key not in raw:
            raise ConfigParseError(f"{source}: missing required key {key!r}")
    points_default, half_width_default = _grid_defaults(float(raw["t_final"]))  # type: ignore[arg-type]
    try:
        return StudyConfig(
            dimension=raw["dimension"],
            points=raw.get("points", points_default),
            half_width=raw.get("half_width", half_width_default),
            sigma=raw["sigma"],
            tau_list=tuple(raw["tau_list"]),
            t_final=raw["t_final"],
            datum=raw.get("datum", "gaussian"),
            seed=raw.get("seed", 0),
            filter_enabled=raw.get("filter", True),
            reference_refinement=raw.get("reference_refinement", 16),
            checkpoint_stride=raw.get("checkpoint_stride", 0),
            rough_exponent=raw.get("rough_exponent", 1.6),
        )
    except ConstraintError as exc:
        raise ConstraintError(f"{source}: {exc}") from None


def parse_config(path: str | Path) -> StudyConfig:
    """Read and validate a configuration file."""
    path = Path(path)
    if not path.exists():
        raise ConfigParseError(f"config file not found: {path}")
    return parse_config_text(path.read_text(), source=str(path))


def serialize_config(cfg: StudyConfig) -> str:
    """Render a StudyConfig back to the flat format (round-trips exactly)."""
    lines = [
        f"dimension = {cfg.dimension}",
        f"points = {cfg.points}",
        f"half_width = {cfg.half_width!r}",
        f"sigma = {cfg.sigma!r}",
        "tau_list = " + ",".join(repr(t) for t in cfg.tau_list),
        f"t_final = {cfg.t_final!r}",
        f"datum = {cfg.datum}",
        f"seed = {cfg.seed}",
        f"filter = {'on' if cfg.filter_enabled else 'off'}",
        f"reference_refinement = {cfg.reference_refinement}",
        f"checkpoint_stride = {cfg.checkpoint_stride}",
        f"rough_exponent = {cfg.rough_exponent!r}",
    ]
    return "\n".join(lines) + "\n"


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path: Path, header: list[str], rows: list[list]) -> Path:
    """Deterministic CSV: fixed column order, LF newlines, round-trip floats."""
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n")
    return path


@dataclass
class RunManifest:
    """What one CLI invocation resolved to and produced."""

    version: str
    timestamp_utc: str
    config_text: str
    output_dir: str
    files: list[str]

    def write(self, path: Path) -> Path:
        payload = {
            "version": self.version,
            "timestamp_utc": self.timestamp_utc,
            "config": self.config_text,
            "output_dir": self.output_dir,
            "files": sorted(self.files),
        }
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return path


class _Emitter:
    def __init__(self, cfg: StudyConfig, out_dir: Path):
        self.cfg = cfg
        self.out = out_dir
        self.out.mkdir(parents=True, exist_ok=True)
        self.files: list[str] = []

    def emit(self, name: str, header: list[str], rows: list[list]) -> None:
        write_csv(self.out / name, header, rows)
        self.files.append(name)

    def finish(self) -> Path:
        self.files.append("manifest.json")
        manifest = RunManifest(
            version=ARTIFACT_VERSION,
            timestamp_utc=time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
            config_text=serialize_config(self.cfg),
            output_dir=str(self.out),
            files=list(self.files),
        )
        return manifest.write(self.out / "manifest.json")


_TRAJECTORY_HEADER = ["t", "mass", "energy", "pseudoconf_total", "j_norm_sq", "l_r0_norm", "compensated_decay"]


def _trajectory_rows(records) -> list[list]:
    return [
        [r.time, r.mass, r.energy, r.pseudoconf_total, r.j_norm_sq, r.l_r0_norm, r.compensated_decay]
        for r in records
    ]


def _cmd_converge(cfg: StudyConfig, emitter: _Emitter) -> int:
    study = run_convergence_study(cfg)
    emitter.emit(
        "convergence.csv",
        ["tau", "n_steps", "sup_error_l2", "final_error_l2"],
        [[r.tau, r.n_steps, r.sup_error_l2, r.final_error_l2] for r in study.rows],
    )
    return 0


def _cmd_uniformity(cfg: StudyConfig, emitter: _Emitter) -> int:
    study = run_uniformity_study(cfg)
    emitter.emit(
        "uniformity.csv",
        ["horizon", "sup_error_l2", "sup_error_l2_unfiltered"],
        [[r.horizon, r.sup_error_l2, r.sup_error_l2_unfiltered] for r in study.rows],
    )
    return 0


def _cmd_decay(cfg: StudyConfig, emitter: _Emitter) -> int:
    study = run_decay_study(cfg)
    emitter.emit("trajectory.csv", _TRAJECTORY_HEADER, _trajectory_rows(study.oracle))
    emitter.emit("trajectory_filtered.csv", _TRAJECTORY_HEADER, _trajectory_rows(study.filtered))
    return 0


def _cmd_scatter(cfg: StudyConfig, emitter: _Emitter) -> int:
    study = run_scattering_study(cfg)
    emitter.emit(
        "scattering.csv",
        ["t", "cauchy_l2", "sigma_diff"],
        [[r.time, r.cauchy_l2, r.sigma_diff] for r in study.oracle_rows],
    )
    emitter.emit(
        "scattering_filtered.csv",
        ["t", "cauchy_l2", "sigma_diff"],
        [[r.time, r.cauchy_l2, r.sigma_diff] for r in study.filtered_rows],
    )
    return 0


def _cmd_invariants(cfg: StudyConfig, emitter: _Emitter) -> int:
    rows = run_invariant_suite(cfg)
    emitter.emit(
        "invariants.csv",
        ["name", "measured", "bound", "pass"],
        [[r.name, r.measured, r.bound, r.passed] for r in rows],
    )
    return 0 if all(r.passed for r in rows) else 3


def _cmd_single_run(cfg: StudyConfig, emitter: _Emitter) -> int:
    tau = cfg.tau_list[0]
    stride = cfg.checkpoint_stride or max(1, int(round(1.0 / tau)) if cfg.t_final > 10 else 1)
    traj = evolve(
        cfg.datum_field(),
        cfg.scheme(tau),
        n_steps=int(round(cfg.t_final / tau)),
        checkpoint_stride=stride,
        boundary_threshold=cfg.guard(),
    )
    records = trajectory_diagnostics(traj, cfg.sigma, cfg.dimension)
    emitter.emit("trajectory.csv", _TRAJECTORY_HEADER, _trajectory_rows(records))
    return 0


_COMMANDS = {
    "converge": _cmd_converge,
    "uniformity": _cmd_uniformity,
    "decay": _cmd_decay,
    "scatter": _cmd_scatter,
    "invariants": _cmd_invariants,
    "single-run": _cmd_single_run,
}


def cli_main(argv: list[str] | None = None) -> int:
    """
    Run one study.  Exit codes: 0 success, 1 configuration problems,
    2 corrupted/leaking simulation, 3 invariant-suite failure.
    """
    parser = argparse.ArgumentParser(
        prog="nlsplit",
        description="Split-step solver studies for the defocusing nonlinear Schrodinger equation",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name, help=f"run the {name} study")
        p.add_argument("--config", required=True, help="path to a key=value config file")
        p.add_argument("--out", default="./out", help="output directory (default ./out)")
        p.add_argument("--quiet", action="store_true", help="suppress progress output")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        cfg = parse_config(args.config)
        emitter = _Emitter(cfg, Path(args.out))
        code = _COMMANDS[args.command](cfg, emitter)
        manifest_path = emitter.finish()
        if not args.quiet:
            for name in emitter.files:
                print(f"wrote {Path(args.out) / name}")
            print(f"manifest: {manifest_path}")
        return code
    except (ConfigParseError, ConstraintError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (NonFiniteError, BoundaryLeakError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NlsplitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    raise SystemExit(cli_main())
