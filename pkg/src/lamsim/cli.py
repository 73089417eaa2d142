"""Command-line front end: config parsing, the propagate / sweep / gap /
validate subcommands, and CSV emission.

Configuration comes from an optional ``key = value`` file (``#`` comments,
quoted strings) plus command-line flags; flags win.  All outputs are CSV
with ``#``-prefixed metadata lines recording the fully resolved parameter
set, so identical inputs give byte-identical files (unless ``--timestamp``
is passed).

Exit codes: 0 success, 1 validation-threshold failure, 2 configuration or
I/O error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, fields as dc_fields
from datetime import datetime, timezone

import numpy as np

from . import periodic
from .analysis import cptp_check, density_validity, spectral_gap
from .linalg import EigConvergenceError
from .magnus import MagnusOrder
from .model import (DIM, PRESET_NAMES, LambdaParams, ground_state,
                    liouville_generator, preset, vec)
from .periodic import (HorizonError, commensurate_period, one_period)
from .sweep import (BASE_STEPS, SweepAxis, SweepSpec, run_case, run_sweep)

EXIT_OK = 0
EXIT_THRESHOLD = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

_PARAM_KEYS = ("e1", "e2", "e3", "omega_p", "omega_c", "rabi_p", "rabi_c",
               "gamma_12", "gamma_23", "nbar_12", "nbar_23")

# key -> parser for config-file / flag values
_KEY_PARSERS = {
    "case": str, "order": int, "steps_per_period": int, "periods": int,
    "horizon": float, "drive": str, "frame": str, "out": str,
    "eps_ss": float, "workers": int, "observables": str,
    "delta_omega_p": float, "delta_omega_c": float,
    "omega_p_range": str, "omega_c_range": str,
    **{k: float for k in _PARAM_KEYS},
}


class ConfigError(Exception):
    """Invalid configuration (unknown key, type mismatch, conflicts)."""


@dataclass
class RunConfig:
    """Fully merged run configuration with library defaults applied."""

    case: str | None = None
    e1: float | None = None
    e2: float | None = None
    e3: float | None = None
    omega_p: float | None = None
    omega_c: float | None = None
    rabi_p: float | None = None
    rabi_c: float | None = None
    gamma_12: float | None = None
    gamma_23: float | None = None
    nbar_12: float | None = None
    nbar_23: float | None = None
    delta_omega_p: float = 0.0
    delta_omega_c: float = 0.0
    order: int = 6
    steps_per_period: int = BASE_STEPS
    periods: int | None = None
    horizon: float | None = None
    drive: str = "both"
    frame: str = "rwf"
    out: str | None = None
    observables: str = "populations,coherences"
    eps_ss: float = 1e-6
    workers: int = 1
    omega_p_range: str | None = None
    omega_c_range: str | None = None
    timestamp: bool = False


def _parse_value(key: str, raw: str, where: str):
    if key not in _KEY_PARSERS:
        raise ConfigError(f"{where}: unknown key {key!r}")
    raw = raw.strip()
    if len(raw) >= 2 and raw[0] == raw[-1] and raw[0] in "\"'":
        raw = raw[1:-1]
    try:
        return _KEY_PARSERS[key](raw)
    except ValueError as exc:
        raise ConfigError(f"{where}: bad value for {key!r}: {exc}") from exc


def parse_config_text(text: str) -> dict:
    """Parse ``key = value`` configuration text into a validated dict."""
    out: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', "
                              f"got {line.strip()!r}")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        out[key] = _parse_value(key, raw, f"line {lineno}")
    return out


def build_config(args: argparse.Namespace) -> RunConfig:
    """Merge a config file (if any) with flag overrides into a RunConfig."""
    values: dict = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                values.update(parse_config_text(fh.read()))
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
    cfg_names = {f.name for f in dc_fields(RunConfig)}
    for key, value in vars(args).items():
        if key in cfg_names and value is not None:
            values[key] = value
    if values.get("case") is not None:
        explicit = [k for k in _PARAM_KEYS if values.get(k) is not None]
        if explicit:
            raise ConfigError(
                f"preset 'case' conflicts with explicit keys {explicit}")
    cfg = RunConfig(**{k: v for k, v in values.items() if k in cfg_names})
    if cfg.order not in (4, 6):
        raise ConfigError(f"order must be 4 or 6, got {cfg.order}")
    if cfg.drive not in ("full", "rwa", "both"):
        raise ConfigError(f"drive must be full, rwa or both, got {cfg.drive!r}")
    if cfg.frame not in ("lab", "rwf"):
        raise ConfigError(f"frame must be lab or rwf, got {cfg.frame!r}")
    if cfg.periods is not None and cfg.horizon is not None:
        raise ConfigError("periods and horizon are mutually exclusive")
    return cfg


def resolve_params(cfg: RunConfig) -> LambdaParams:
    if cfg.case is not None:
        if cfg.case not in PRESET_NAMES:
            raise ConfigError(f"unknown case {cfg.case!r}; "
                              f"expected one of {PRESET_NAMES}")
        return preset(cfg.case, delta_omega_p=cfg.delta_omega_p,
                      delta_omega_c=cfg.delta_omega_c)
    required = ("e2", "e3", "rabi_p", "rabi_c")
    missing = [k for k in required if getattr(cfg, k) is None]
    if missing:
        raise ConfigError(
            f"missing required keys {missing} (or pass case = \"A-I\" ... "
            f"\"C-II\")")
    kwargs = {k: getattr(cfg, k) for k in _PARAM_KEYS
              if getattr(cfg, k) is not None}
    try:
        if cfg.omega_p is None and cfg.omega_c is None:
            kwargs.pop("omega_p", None)
            kwargs.pop("omega_c", None)
            return LambdaParams.tpr(delta_omega_p=cfg.delta_omega_p,
                                    delta_omega_c=cfg.delta_omega_c, **kwargs)
        if cfg.omega_p is None or cfg.omega_c is None:
            raise ConfigError("omega_p and omega_c must be given together")
        return LambdaParams(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _order(cfg: RunConfig) -> MagnusOrder:
    return MagnusOrder.ORDER4 if cfg.order == 4 else MagnusOrder.ORDER6


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    if value is None:
        return ""
    return str(value)


def _metadata_lines(cfg: RunConfig, p: LambdaParams,
                    extra: dict | None = None) -> list[str]:
    items = {k: getattr(p, k) for k in _PARAM_KEYS}
    items.update(order=cfg.order, steps_per_period=cfg.steps_per_period,
                 drive=cfg.drive, frame=cfg.frame, eps_ss=cfg.eps_ss)
    if extra:
        items.update(extra)
    lines = [f"# {key} = {_fmt(val)}" for key, val in items.items()]
    if cfg.timestamp:
        lines.append(f"# generated = "
                     f"{datetime.now(timezone.utc).isoformat()}")
    return lines


def _write_csv(cfg: RunConfig, metadata: list[str], header: list[str],
               rows) -> None:
    lines = list(metadata)
    lines.append(",".join(header))
    lines.extend(",".join(_fmt(cell) for cell in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _drive_variants(cfg: RunConfig) -> tuple[str, ...]:
    return ("full", "rwa") if cfg.drive == "both" else (cfg.drive,)


PROPAGATE_HEADER = ["t", "rho11", "rho22", "rho33", "re_r12", "im_r12",
                    "re_r13", "im_r13", "re_r23", "im_r23", "drive", "frame"]


def cmd_propagate(cfg: RunConfig) -> int:
    p = resolve_params(cfg)
    period, _ = commensurate_period(p.omega_p, p.omega_c)
    if cfg.horizon is not None:
        horizon = cfg.horizon
    else:
        horizon = (cfg.periods if cfg.periods is not None else 1) * period
    rows = []
    for drive in _drive_variants(cfg):
        traj = run_case(p, horizon, order=_order(cfg), drive=drive,
                        frame=cfg.frame,
                        steps_per_period=cfg.steps_per_period)
        for t, rho in zip(traj.times, traj.states):
            rows.append([t, rho[0, 0].real, rho[1, 1].real, rho[2, 2].real,
                         rho[0, 1].real, rho[0, 1].imag,
                         rho[0, 2].real, rho[0, 2].imag,
                         rho[1, 2].real, rho[1, 2].imag,
                         drive, cfg.frame])
    _write_csv(cfg, _metadata_lines(cfg, p, {"horizon": horizon}),
               PROPAGATE_HEADER, rows)
    return EXIT_OK


def _parse_range(spec: str, name: str) -> tuple[float, float, float]:
    parts = spec.split(":")
    if len(parts) != 3:
        raise ConfigError(f"{name} must look like start:stop:step, "
                          f"got {spec!r}")
    try:
        return tuple(float(x) for x in parts)  # type: ignore[return-value]
    except ValueError as exc:
        raise ConfigError(f"bad number in {name}: {exc}") from exc


def cmd_sweep(cfg: RunConfig) -> int:
    p = resolve_params(cfg)
    axes = []
    for key, axis_name in (("omega_p_range", "omega_p"),
                           ("omega_c_range", "omega_c")):
        spec = getattr(cfg, key)
        if spec is not None:
            start, stop, step = _parse_range(spec, key)
            try:
                axes.append(SweepAxis(axis_name, start, stop, step))
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
    if not axes:
        raise ConfigError(
            "sweep needs --omega-p-range and/or --omega-c-range")
    observables = tuple(s.strip() for s in cfg.observables.split(",")
                        if s.strip())
    try:
        spec = SweepSpec(base=p, axis1=axes[0],
                         axis2=axes[1] if len(axes) > 1 else None,
                         observables=observables, drive=cfg.drive,
                         order=_order(cfg), eps_ss=cfg.eps_ss,
                         workers=cfg.workers)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    result = run_sweep(spec)
    _write_csv(cfg, _metadata_lines(cfg, p, {"observables": cfg.observables}),
               result.columns, result.table())
    return EXIT_OK


def cmd_gap(cfg: RunConfig) -> int:
    p = resolve_params(cfg)
    period, steps = commensurate_period(p.omega_p, p.omega_c)
    rows = []
    for drive in _drive_variants(cfg):
        g = liouville_generator(p, rwa=(drive == "rwa"), dissipative=True)
        plan = periodic.make_plan(g, period, steps)
        u_t, _ = one_period(g, plan, _order(cfg))
        report = spectral_gap(u_t, period=period)
        for i, lg in enumerate(report.eigen_logs):
            rows.append([drive, f"log{i}", lg.real, lg.imag])
        rows.append([drive, "gap", report.gap, ""])
        rows.append([drive, "gap_per_time", report.gap_per_time, ""])
        rows.append([drive, "degenerate", int(report.degenerate), ""])
    _write_csv(cfg, _metadata_lines(cfg, p, {"period": period}),
               ["drive", "quantity", "re", "im"], rows)
    return EXIT_OK


def cmd_validate(cfg: RunConfig) -> int:
    p = resolve_params(cfg)
    period, steps = commensurate_period(p.omega_p, p.omega_c)
    rows = []
    worst_fail = False
    for drive in _drive_variants(cfg):
        g = liouville_generator(p, rwa=(drive == "rwa"))
        plan = periodic.make_plan(g, period, steps)
        u_t, _ = one_period(g, plan, _order(cfg))
        cptp = cptp_check(u_t)
        rho_t = (u_t @ vec(ground_state())).reshape(DIM, DIM)
        dens = density_validity(rho_t)
        checks = [
            ("trace_defect", cptp.trace_defect, 1e-10),
            ("min_choi_eigenvalue", -cptp.min_choi_eigenvalue, 1e-9),
            ("choi_hermiticity_defect", cptp.choi_hermiticity_defect, 1e-9),
            ("state_trace_defect", dens.trace_defect, 1e-10),
            ("state_hermiticity_defect", dens.hermiticity_defect, 1e-10),
            ("state_min_eigenvalue", -dens.min_eigenvalue, 1e-9),
        ]
        for name, defect, threshold in checks:
            ok = defect <= threshold
            worst_fail |= not ok
            rows.append([drive, name, defect, threshold,
                         "pass" if ok else "FAIL"])
    _write_csv(cfg, _metadata_lines(cfg, p, {"period": period}),
               ["drive", "check", "defect", "threshold", "status"], rows)
    if cfg.out is not None:
        for row in rows:
            print(",".join(_fmt(c) for c in row))
    return EXIT_THRESHOLD if worst_fail else EXIT_OK


_COMMANDS = {"propagate": cmd_propagate, "sweep": cmd_sweep,
             "gap": cmd_gap, "validate": cmd_validate}


def _add_common_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--config", help="key = value configuration file")
    sp.add_argument("--case", choices=PRESET_NAMES)
    sp.add_argument("--order", type=int, choices=(4, 6))
    sp.add_argument("--steps-per-period", type=int, dest="steps_per_period")
    sp.add_argument("--periods", type=int)
    sp.add_argument("--horizon", type=float)
    sp.add_argument("--drive", choices=("full", "rwa", "both"))
    sp.add_argument("--frame", choices=("lab", "rwf"))
    sp.add_argument("--out")
    sp.add_argument("--observables")
    sp.add_argument("--eps-ss", type=float, dest="eps_ss")
    sp.add_argument("--workers", type=int)
    sp.add_argument("--delta-omega-p", type=float, dest="delta_omega_p")
    sp.add_argument("--delta-omega-c", type=float, dest="delta_omega_c")
    sp.add_argument("--omega-p-range", dest="omega_p_range",
                    metavar="a:b:step")
    sp.add_argument("--omega-c-range", dest="omega_c_range",
                    metavar="a:b:step")
    sp.add_argument("--timestamp", action="store_true", default=None,
                    help="record generation time in the CSV header")
    for key in _PARAM_KEYS:
        sp.add_argument(f"--{key.replace('_', '-')}", type=float, dest=key,
                        help=argparse.SUPPRESS)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="lamsim",
        description="Driven three-level lambda-system dynamics via "
                    "Magnus-expansion propagators.")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
            ("propagate", "time-series propagation to CSV"),
            ("sweep", "steady-state observables over frequency grids"),
            ("gap", "spectral gap of the one-period propagator"),
            ("validate", "CPTP and density-matrix defect report")):
        _add_common_flags(subparsers.add_parser(name, help=helptext))
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
        return _COMMANDS[args.command](cfg)
    except (FloatingPointError, HorizonError, EigConvergenceError,
            np.linalg.LinAlgError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
