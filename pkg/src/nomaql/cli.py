"""Command-line front end: run, sweep, and repro subcommands.

Configuration is layered: built-in defaults (the reference configuration),
then an optional ``key = value`` config file, then command-line flags.
Power is entered in dBm at this boundary and converted to watts
internally; ``--load`` expresses the population as devices per slot.

``sweep`` accepts comma lists on the sweepable axes (--protocol, --load,
--levels, --beta, --alpha) and runs their cartesian product. ``repro``
runs a canned experiment grid by name (fig4 .. fig9) and renders its
figures next to the delimited output.

Exit status: 0 on success, 1 when any grid point carried the
not-converged warning (more than half its realizations hit the frame cap;
suppress with --warn-only), 2 on configuration or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Mapping, Optional

import numpy as np

from .core import (
    FadingMode,
    LevelMode,
    ParameterError,
    Protocol,
    RunResult,
    SystemParams,
    sinr_threshold_from_se,
    watts_to_dbm,
)
from .engine import run_realization
from .montecarlo import (
    SweepConfig,
    SweepResult,
    derive_seed,
    point_params,
    run_sweep,
)


class ParseError(ValueError):
    """Malformed configuration value; the message carries file/flag context."""


class UnknownKey(ParseError):
    """A config file names a key the simulator does not define."""


class SinkError(OSError):
    """Results could not be written to the requested output sink."""


# --------------------------------------------------------------------------
# configuration schema

DEFAULTS: dict = {
    "protocol": "mpl-ql",
    "load": 4.0,
    "devices": None,
    "slots": 100,
    "packets": 100,
    "levels": 8,
    "alpha": 0.1,
    "beta": 0.0,
    "gamma_lin": 3.0,
    "spectral_eff": None,
    "radius_m": 200.0,
    "ref_distance_m": 1.0,
    "bandwidth_hz": 125e3,
    "carrier_hz": 915e6,
    "pathloss_exp": 3.0,
    "noise_psd_dbm_hz": -150.0,
    "max_power_dbm": 0.0,
    "max_frames": None,
    "level_mode": "positive-equidistant",
    "fading": "unit",
    "sa_sinr_check": False,
    "runs": None,
    "seed": 1,
    "workers": "auto",
}

#: keys that accept comma lists and become sweep axes when multi-valued,
#: mapped to their grid-axis name.
GRID_KEY_AXES = {
    "protocol": "protocol",
    "load": "loading_factor",
    "levels": "n_power_levels",
    "beta": "sic_error_factor",
    "alpha": "learning_rate",
}

_FLOAT_KEYS = {"load", "alpha", "beta", "gamma_lin", "spectral_eff",
               "radius_m", "ref_distance_m", "bandwidth_hz", "carrier_hz",
               "pathloss_exp", "noise_psd_dbm_hz", "max_power_dbm"}
_INT_KEYS = {"devices", "slots", "packets", "levels", "max_frames",
             "runs", "seed"}
_BOOL_KEYS = {"sa_sinr_check"}

#: flag spelling used when surfacing validation errors for each field.
FLAG_BY_FIELD = {
    "learning_rate": "--alpha",
    "sic_error_factor": "--beta",
    "n_devices": "--devices/--load",
    "n_slots": "--slots",
    "packets_per_device": "--packets",
    "n_power_levels": "--levels",
    "sinr_threshold": "--gamma-lin/--spectral-eff",
    "cell_radius_m": "--radius-m",
    "ref_distance_m": "--ref-distance-m",
    "carrier_hz": "--carrier-hz",
    "bandwidth_hz": "--bandwidth-hz",
    "pathloss_exponent": "--pathloss-exp",
    "max_power_w": "--max-power-dbm",
    "max_frames": "--max-frames",
    "spectral_efficiency": "--spectral-eff",
}


def _coerce_scalar(key: str, value, where: str):
    if key in _BOOL_KEYS:
        if isinstance(value, bool):
            return value
        s = str(value).strip().lower()
        if s in ("1", "true", "yes", "on"):
            return True
        if s in ("0", "false", "no", "off"):
            return False
        raise ParseError(f"{where}: cannot parse {value!r} as a boolean")
    try:
        if key in _INT_KEYS:
            return int(str(value).strip())
        if key in _FLOAT_KEYS:
            return float(str(value).strip())
    except ValueError:
        kind = "an integer" if key in _INT_KEYS else "a number"
        raise ParseError(f"{where}: cannot parse {value!r} as {kind}") from None
    return str(value).strip()


def _coerce(key: str, value, where: str):
    """Coerce one raw config value; grid keys may be comma lists."""
    if key in GRID_KEY_AXES:
        if isinstance(value, (list, tuple)):
            items = list(value)
        else:
            items = [v for v in str(value).split(",") if v.strip()]
        if not items:
            raise ParseError(f"{where}: empty value list")
        return [_coerce_scalar(key, v, where) for v in items]
    return _coerce_scalar(key, value, where)


def _read_config_file(path: str) -> dict:
    """Flat ``key = value`` file; '#' starts a comment, unknown keys fail."""
    raw: dict = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise ParseError(f"cannot read config file {path}: {exc}") from None
    for lineno, line in enumerate(lines, 1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ParseError(f"{path}:{lineno}: expected 'key = value', "
                             f"got {stripped!r}")
        key, value = (s.strip() for s in stripped.split("=", 1))
        if key not in DEFAULTS:
            raise UnknownKey(f"{path}:{lineno}: unknown key {key!r}")
        raw[key] = _coerce(key, value, f"{path}:{lineno}")
    return raw


def _parse_protocol(name: str) -> Protocol:
    try:
        return Protocol(str(name).strip().lower().replace("_", "-"))
    except ValueError:
        raise ParseError(
            f"unknown protocol {name!r}; choose from "
            f"{[p.value for p in Protocol]}") from None


def _parse_level_mode(name: str) -> LevelMode:
    try:
        return LevelMode(str(name).strip().lower().replace("_", "-"))
    except ValueError:
        raise ParseError(
            f"unknown level mode {name!r}; choose from "
            f"{[m.value for m in LevelMode]}") from None


def _parse_fading_mode(name: str) -> FadingMode:
    try:
        return FadingMode(str(name).strip().lower().replace("_", "-"))
    except ValueError:
        raise ParseError(
            f"unknown fading mode {name!r}; choose from "
            f"{[m.value for m in FadingMode]}") from None


def _flagify(err: ParameterError) -> ParameterError:
    """Rewrite field names in a validation error to their CLI flags."""
    msg = str(err)
    for fld, flag in FLAG_BY_FIELD.items():
        msg = msg.replace(fld, f"{flag} ({fld})")
    return type(err)(msg)


def parse_config(file_path: Optional[str] = None,
                 overrides: Optional[Mapping] = None,
                 default_runs: int = 100) -> SweepConfig:
    """Resolve defaults, config file, and flag overrides into a SweepConfig.

    ``overrides`` maps config keys (flag dest names) to raw values; None
    values mean "not given". Multi-valued grid keys become sweep axes.
    Raises ParseError/UnknownKey for malformed input and the specific
    ParameterError subclass (with flag names in the message) for values
    that fail validation.
    """
    values = dict(DEFAULTS)
    explicit: set = set()
    if file_path:
        for key, val in _read_config_file(file_path).items():
            values[key] = val
            explicit.add(key)
    for key, val in (overrides or {}).items():
        if val is None:
            continue
        if key not in DEFAULTS:
            raise UnknownKey(f"unknown config key {key!r}")
        values[key] = _coerce(key, val, f"--{key.replace('_', '-')}")
        explicit.add(key)

    if "devices" in explicit and "load" in explicit:
        raise ParseError("give either --devices or --load, not both")
    if "spectral_eff" in explicit and "gamma_lin" in explicit:
        raise ParseError("give either --gamma-lin or --spectral-eff, not both")

    gamma = values["gamma_lin"]
    if values["spectral_eff"] is not None:
        gamma = sinr_threshold_from_se(values["spectral_eff"])

    # Multi-valued grid keys open sweep axes; singletons pin the base.
    grid: dict = {}
    scalars: dict = {}
    for key, axis in GRID_KEY_AXES.items():
        vals = values[key]
        if not isinstance(vals, list):
            vals = [vals]
        if key == "protocol":
            vals = [_parse_protocol(v) for v in vals]
        if len(vals) > 1:
            grid[axis] = tuple(vals)
        else:
            scalars[key] = vals[0]

    n_slots = values["slots"]
    if values["devices"] is not None:
        if "load" in scalars:
            n_devices = values["devices"]
        else:
            raise ParseError("--devices cannot be combined with a --load sweep")
    elif "load" in scalars:
        n_devices = int(round(scalars["load"] * n_slots))
    else:
        # load is a sweep axis: every grid point overrides n_devices, the
        # base just needs a valid value.
        n_devices = n_slots

    base = SystemParams(
        n_devices=n_devices,
        n_slots=n_slots,
        packets_per_device=values["packets"],
        n_power_levels=scalars.get("levels", DEFAULTS["levels"]),
        learning_rate=scalars.get("alpha", DEFAULTS["alpha"]),
        sinr_threshold=gamma,
        sic_error_factor=scalars.get("beta", DEFAULTS["beta"]),
        protocol=scalars.get("protocol", _parse_protocol(DEFAULTS["protocol"])),
        level_mode=_parse_level_mode(values["level_mode"]),
        fading_mode=_parse_fading_mode(values["fading"]),
        cell_radius_m=values["radius_m"],
        ref_distance_m=values["ref_distance_m"],
        carrier_hz=values["carrier_hz"],
        bandwidth_hz=values["bandwidth_hz"],
        pathloss_exponent=values["pathloss_exp"],
        noise_psd_dbm_hz=values["noise_psd_dbm_hz"],
        max_power_w=float(10.0 ** (values["max_power_dbm"] / 10.0) / 1000.0),
        max_frames=values["max_frames"],
        sa_sinr_check=values["sa_sinr_check"],
    )
    runs = values["runs"] if values["runs"] is not None else default_runs
    config = SweepConfig(base_params=base, grid=grid, n_realizations=runs,
                         master_seed=values["seed"],
                         parallelism=values["workers"])
    try:
        for overrides_ in config.points():
            point_params(base, overrides_)
    except ParameterError as exc:
        raise _flagify(exc) from None
    return config


# --------------------------------------------------------------------------
# output rendering

CSV_COLUMNS = ("protocol", "load_factor", "n_devices", "levels", "beta",
               "alpha", "throughput_mean", "throughput_ci95", "latency_mean",
               "latency_ci95", "not_converged_rate", "n_realizations",
               "master_seed")


def _fmt(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".6g")


def _params_dict(params: SystemParams) -> dict:
    d = asdict(params)
    d["protocol"] = params.protocol.value
    d["level_mode"] = params.level_mode.value
    d["fading_mode"] = params.fading_mode.value
    return d


def _header_lines(result: SweepResult) -> list[str]:
    cfg = result.config
    base = " ".join(f"{k}={_fmt(v) if not isinstance(v, str) else v}"
                    for k, v in _params_dict(cfg.base_params).items())
    lines = [
        "# nomaql sweep result",
        "# units: throughput = packets/slot/frame, latency = frames,"
        " power = watts, distances = meters",
        f"# master_seed = {cfg.master_seed}",
        f"# n_realizations = {cfg.n_realizations}",
        f"# base: {base}",
    ]
    for axis, vals in cfg.grid.items():
        shown = ",".join(v.value if isinstance(v, Protocol) else _fmt(v)
                         for v in vals)
        lines.append(f"# grid: {axis} = {shown}")
    return lines


def _point_row(point, master_seed: int) -> dict:
    p, s = point.params, point.stats
    return {
        "protocol": p.protocol.value,
        "load_factor": p.n_devices / p.n_slots,
        "n_devices": p.n_devices,
        "levels": p.n_power_levels,
        "beta": p.sic_error_factor,
        "alpha": p.learning_rate,
        "throughput_mean": s.throughput_mean,
        "throughput_ci95": s.throughput_ci95,
        "latency_mean": s.latency_mean,
        "latency_ci95": s.latency_ci95,
        "not_converged_rate": s.not_converged_rate,
        "n_realizations": s.n_realizations,
        "master_seed": master_seed,
    }


def render_csv(result: SweepResult) -> str:
    lines = _header_lines(result)
    lines.append(",".join(CSV_COLUMNS))
    for point in result.points:
        row = _point_row(point, result.config.master_seed)
        lines.append(",".join(
            row[c] if isinstance(row[c], str) else _fmt(row[c])
            for c in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def render_json(result: SweepResult) -> str:
    cfg = result.config
    points = []
    for point in result.points:
        row = _point_row(point, cfg.master_seed)
        s = point.stats
        row.update(
            throughput_std=s.throughput_std,
            latency_std=s.latency_std,
            warn_not_converged=s.warn_not_converged,
            low_sample=s.low_sample,
            overrides={k: (v.value if isinstance(v, Protocol) else v)
                       for k, v in point.overrides.items()},
            interference_trace_mean=s.interference_trace_mean.tolist(),
            convergence_trace_mean=s.convergence_trace_mean.tolist(),
        )
        points.append(row)
    doc = {
        "master_seed": cfg.master_seed,
        "n_realizations": cfg.n_realizations,
        "base_params": _params_dict(cfg.base_params),
        "grid": {k: [v.value if isinstance(v, Protocol) else v for v in vals]
                 for k, vals in cfg.grid.items()},
        "points": points,
    }
    return json.dumps(doc, indent=2) + "\n"


def render_results(result: SweepResult, fmt: str) -> str:
    if fmt == "csv":
        return render_csv(result)
    if fmt == "json":
        return render_json(result)
    raise ParseError(f"unknown output format {fmt!r}")


TRACE_COLUMNS = ("frame", "device_id", "slot", "level", "interference_w",
                 "conv_factor", "success_flag")


def render_trace(run: RunResult, params: SystemParams, seed: int) -> str:
    """Per-frame trace of the tracked devices as CSV.

    Slot and level are 0-based indices; frames after a device finished
    carry slot = level = -1, zero interference and conv_factor 1.
    """
    base = " ".join(f"{k}={_fmt(v) if not isinstance(v, str) else v}"
                    for k, v in _params_dict(params).items())
    lines = [
        "# nomaql per-frame trace",
        f"# realization_seed = {seed}",
        f"# params: {base}",
        f"# tracked device ids: {list(run.tracked_ids)}",
        ",".join(TRACE_COLUMNS),
    ]
    for dev in run.tracked_ids:
        interf = run.interference_trace[dev]
        conv = run.convergence_trace[dev]
        slot = run.slot_trace[dev]
        level = run.level_trace[dev]
        succ = run.success_trace[dev]
        for f in range(run.latency_frames):
            lines.append(",".join((
                str(f), str(dev), str(int(slot[f])), str(int(level[f])),
                _fmt(interf[f]), _fmt(conv[f]), "1" if succ[f] else "0")))
    return "\n".join(lines) + "\n"


def emit(text: str, out: Optional[str]) -> None:
    """Write to a file path, or stdout when ``out`` is None or '-'."""
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise SinkError(f"cannot write results to {out}: {exc}") from None


# --------------------------------------------------------------------------
# canned experiment grids

#: The reference configuration's -150 dBm/Hz noise PSD leaves a cell-edge
#: device below the SINR threshold even when it has a slot to itself, so
#: contention-resolution behavior would be swamped by link failures. The
#: canned experiments therefore run at the thermal floor, where the learned
#: equilibria rather than the link budget set the performance.
REPRO_NOISE_PSD_DBM_HZ = -174.0

REPRO_NAMES = ("fig4", "fig5", "fig6", "fig7", "fig8", "fig9")


def repro_configs(name: str, runs: int = 100, seed: int = 1,
                  workers="auto") -> dict[str, SweepConfig]:
    """Canned sweep(s) behind one repro figure, keyed by sweep label.

    fig4/fig5: throughput / latency vs load per level count. fig6:
    interference and convergence traces for two backlog sizes. fig7:
    protocol comparison. fig8: SIC residual sensitivity. fig9: learning
    rate sensitivity.
    """
    def cfg(grid, **base_over):
        base = SystemParams(noise_psd_dbm_hz=REPRO_NOISE_PSD_DBM_HZ,
                            **base_over)
        return SweepConfig(base_params=base, grid=grid, n_realizations=runs,
                           master_seed=seed, parallelism=workers)

    loads_full = (0.25, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0)
    if name in ("fig4", "fig5"):
        return {"main": cfg({"loading_factor": loads_full,
                             "n_power_levels": (2, 4, 8, 12, 16)})}
    if name == "fig6":
        grid = {"loading_factor": (3.0, 6.0), "n_power_levels": (2, 8)}
        return {"L50": cfg(grid, packets_per_device=50),
                "L100": cfg(grid, packets_per_device=100)}
    if name == "fig7":
        return {"main": cfg({
            "protocol": (Protocol.SLOTTED_ALOHA, Protocol.INDEPENDENT_QL,
                         Protocol.COLLABORATIVE_QL, Protocol.PACKET_QL,
                         Protocol.MPL_QL),
            "loading_factor": (1.0, 2.0, 3.0, 4.0, 5.0, 6.0)})}
    if name == "fig8":
        return {"main": cfg({
            "protocol": (Protocol.INDEPENDENT_QL, Protocol.PACKET_QL,
                         Protocol.MPL_QL),
            "loading_factor": (1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0),
            "sic_error_factor": (0.0, 0.01, 0.02)})}
    if name == "fig9":
        return {"main": cfg({
            "n_power_levels": (2, 4, 8),
            "learning_rate": (0.05, 0.1, 0.15, 0.2, 0.25, 0.3,
                              0.35, 0.4, 0.45, 0.5)},
            n_devices=500)}
    raise ParseError(f"unknown repro name {name!r}; choose from {REPRO_NAMES}")


# --------------------------------------------------------------------------
# argument parsing and entry point

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nomaql",
        description="Monte Carlo simulator for Q-learning random access "
                    "over a NOMA uplink")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("system configuration")
    g.add_argument("--config", metavar="FILE",
                   help="flat key = value config file (flags override it)")
    g.add_argument("--protocol", help="protocol, or comma list to sweep: "
                   + ",".join(p.value for p in Protocol))
    g.add_argument("--load", help="devices per slot (comma list to sweep)")
    g.add_argument("--devices", help="device count (alternative to --load)")
    g.add_argument("--slots", help="slots per frame")
    g.add_argument("--packets", help="packets per device")
    g.add_argument("--levels", help="power levels (comma list to sweep)")
    g.add_argument("--alpha", help="learning rate (comma list to sweep)")
    g.add_argument("--beta", help="SIC residual factor (comma list to sweep)")
    g.add_argument("--gamma-lin", dest="gamma_lin",
                   help="linear SINR threshold")
    g.add_argument("--spectral-eff", dest="spectral_eff",
                   help="target spectral efficiency (bit/s/Hz), converted "
                        "to the SINR threshold 2**zeta - 1")
    g.add_argument("--radius-m", dest="radius_m", help="cell radius")
    g.add_argument("--ref-distance-m", dest="ref_distance_m",
                   help="path-loss reference distance")
    g.add_argument("--bandwidth-hz", dest="bandwidth_hz")
    g.add_argument("--carrier-hz", dest="carrier_hz")
    g.add_argument("--pathloss-exp", dest="pathloss_exp")
    g.add_argument("--noise-psd", dest="noise_psd_dbm_hz",
                   help="noise power spectral density, dBm/Hz")
    g.add_argument("--max-power-dbm", dest="max_power_dbm",
                   help="peak transmit power, dBm")
    g.add_argument("--max-frames", dest="max_frames",
                   help="frame cap per realization (default 10x packets)")
    g.add_argument("--level-mode", dest="level_mode",
                   help="positive-equidistant | symmetric-literal")
    g.add_argument("--fading", help="unit | rayleigh-per-frame")
    g.add_argument("--sa-sinr-check", dest="sa_sinr_check",
                   action="store_const", const=True, default=None,
                   help="ALOHA success also requires the SINR threshold")
    r = common.add_argument_group("runs and output")
    r.add_argument("--runs", help="realizations per grid point")
    r.add_argument("--seed", help="master seed")
    r.add_argument("--workers", help="worker processes, or 'auto'")
    r.add_argument("--out", help="output path ('-' or absent: stdout)")
    r.add_argument("--format", choices=("csv", "json"), default=None)
    r.add_argument("--warn-only", action="store_true",
                   help="exit 0 even when grid points fail to converge")

    p_run = sub.add_parser("run", parents=[common],
                           help="one grid point (default: 1 realization)")
    p_run.add_argument("--trace", metavar="FILE",
                       help="also write the first realization's per-frame "
                            "trace CSV here")
    sub.add_parser("sweep", parents=[common],
                   help="cartesian sweep (default: 100 realizations)")
    p_rep = sub.add_parser("repro", parents=[common],
                           help="canned experiment with rendered figures")
    p_rep.add_argument("figure", choices=REPRO_NAMES)
    p_rep.add_argument("--full", action="store_true",
                       help="10000 realizations per point instead of 100")
    return parser


_CONFIG_DESTS = tuple(DEFAULTS)


def _overrides_from_args(args: argparse.Namespace) -> dict:
    return {key: getattr(args, key, None) for key in _CONFIG_DESTS}


def _finish(result_warned: bool, warn_only: bool) -> int:
    if result_warned:
        print("warning: some grid points exceeded the frame cap in more "
              "than half their realizations; their averages are "
              "cap-censored", file=sys.stderr)
        if not warn_only:
            return 1
    return 0


def _cmd_run(args) -> int:
    config = parse_config(args.config, _overrides_from_args(args),
                          default_runs=1)
    if config.grid:
        raise ParseError("run takes a single grid point; "
                         "use sweep for comma lists")
    result = run_sweep(config)
    emit(render_results(result, args.format or "csv"), args.out)
    if args.trace:
        params = result.points[0].params
        seed = derive_seed(config.master_seed, 0, 0)
        rerun = run_realization(params, np.random.default_rng(seed))
        emit(render_trace(rerun, params, seed), args.trace)
    return _finish(result.any_warning, args.warn_only)


def _cmd_sweep(args) -> int:
    config = parse_config(args.config, _overrides_from_args(args),
                          default_runs=100)
    result = run_sweep(config)
    emit(render_results(result, args.format or "csv"), args.out)
    return _finish(result.any_warning, args.warn_only)


def _cmd_repro(args) -> int:
    from . import report

    runs = 10000 if args.full else None
    if runs is None:
        runs = int(args.runs) if args.runs is not None else 100
    seed = int(args.seed) if args.seed is not None else 1
    configs = repro_configs(args.figure, runs=runs, seed=seed,
                            workers=args.workers or "auto")
    outdir = Path(args.out) if args.out else Path(f"repro_{args.figure}")
    outdir.mkdir(parents=True, exist_ok=True)

    results: dict[str, SweepResult] = {}
    warned = False
    fmt = args.format or "csv"
    ext = "json" if fmt == "json" else "csv"
    for label, config in configs.items():
        result = run_sweep(config)
        results[label] = result
        suffix = "" if len(configs) == 1 else f"_{label}"
        path = outdir / f"{args.figure}{suffix}.{ext}"
        emit(render_results(result, fmt), str(path))
        print(f"wrote {path}")
        warned = warned or result.any_warning
    for path in report.render_repro(args.figure, results, outdir):
        print(f"wrote {path}")
    return _finish(warned, args.warn_only)


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"run": _cmd_run, "sweep": _cmd_sweep, "repro": _cmd_repro}
    try:
        return handler[args.command](args)
    except (ParameterError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SinkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
