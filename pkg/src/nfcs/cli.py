"""Command-line front end: one subcommand per experiment kind.

Exit codes: 0 on success, 2 on configuration errors, 3 on I/O errors.
Config files are flat key/value text with dotted sections, e.g.::

    array.n_antennas = 256
    experiment.trials = 200
    experiment.snr_db_list = 0, 5, 10
"""

import argparse
import math
import sys
from dataclasses import replace

from .harness import (
    EXPERIMENT_KINDS,
    ConfigError,
    ExperimentConfig,
    emit,
    preset_config,
    run,
)


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "1", "yes", "on"):
        return True
    if lowered in ("false", "0", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _parse_float(text: str) -> float:
    value = float(text)
    return value


def _parse_float_or_inf(text: str) -> float:
    if text.strip().lower() in ("inf", "+inf", "infinity"):
        return math.inf
    return float(text)


def _parse_optional_float(text: str):
    if text.strip().lower() == "none":
        return None
    return float(text)


def _parse_int_list(text: str) -> tuple:
    return tuple(int(v.strip()) for v in text.split(",") if v.strip())


def _parse_float_list(text: str) -> tuple:
    return tuple(float(v.strip()) for v in text.split(",") if v.strip())


def _parse_str_list(text: str) -> tuple:
    return tuple(v.strip() for v in text.split(",") if v.strip())


# dotted config key -> (ExperimentConfig attribute, parser)
CONFIG_KEYS = {
    "array.carrier_freq_hz": ("carrier_freq", _parse_float),
    "array.n_antennas": ("n_antennas", int),
    "array.spacing_m": ("spacing", _parse_float),
    "channel.n_paths": ("n_paths", int),
    "channel.power_split_db": ("power_split_db", _parse_float),
    "channel.distance_min_m": ("distance_min", _parse_float),
    "channel.distance_max_m": ("distance_max", _parse_float),
    "experiment.trials": ("trials", int),
    "experiment.seed": ("seed", int),
    "experiment.delta": ("delta", _parse_float),
    "experiment.n_list": ("n_list", _parse_int_list),
    "experiment.t_list": ("t_list", _parse_int_list),
    "experiment.snr_db_list": ("snr_db_list", _parse_float_list),
    "experiment.mu0_bins": ("mu0_bins", _parse_float_list),
    "experiment.block_size_list": ("block_size_list", _parse_int_list),
    "experiment.methods": ("methods", _parse_str_list),
    "experiment.n_measurements": ("n_measurements", int),
    "experiment.snr_db": ("snr_db", _parse_float),
    "experiment.mu0_bin_tolerance": ("mu0_bin_tolerance", _parse_float),
    "dictionary.mu": ("mu", _parse_float_or_inf),
    "dictionary.polar_rings": ("polar_rings", int),
    "dictionary.polar_r_min_m": ("polar_r_min", _parse_float),
    "dictionary.polar_r_max_m": ("polar_r_max", _parse_float),
    "recovery.block_size": ("block_size", int),
    "recovery.k_max": ("k_max", int),
    "recovery.stop_alpha": ("stop_alpha", _parse_optional_float),
    "recovery.pilot_kind": ("pilot_kind", str),
    "rip.block_size": ("rip_block_size", int),
    "rip.k": ("rip_k", int),
    "rip.target_xi": ("rip_target_xi", _parse_float),
}


def parse_config_file(path: str) -> dict:
    """Parse a flat dotted-key config file into ExperimentConfig overrides."""
    overrides = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}", f"expected 'key = value', got {raw.strip()!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in CONFIG_KEYS:
                raise ConfigError(key, "unknown config key")
            attr, parser = CONFIG_KEYS[key]
            try:
                overrides[attr] = parser(value)
            except (ValueError, TypeError) as exc:
                raise ConfigError(key, f"bad value {value!r}: {exc}") from exc
    return overrides


def _kind_to_command(kind: str) -> str:
    return kind.lower().replace("_", "-")


_COMMAND_TO_KIND = {_kind_to_command(kind): kind for kind in EXPERIMENT_KINDS}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nfcs",
        description="Seeded Monte Carlo experiments for hybrid near/far-field "
        "channel modeling and block-sparse estimation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command, kind in _COMMAND_TO_KIND.items():
        p = sub.add_parser(command, help=f"run the {kind} experiment")
        p.add_argument("--config", help="flat key/value config file")
        p.add_argument("--seed", type=int, default=1, help="master seed (default 1)")
        p.add_argument("--trials", type=int, help="override trial count")
        p.add_argument("--out", default="-", help="output path ('-' for stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument(
            "--preset",
            choices=("paper", "desk"),
            default="desk",
            help="experiment scale: full-size grids or quick desk-scale runs",
        )
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    kind = _COMMAND_TO_KIND[args.command]
    try:
        config = preset_config(kind, args.preset, args.seed)
        if args.config:
            try:
                overrides = parse_config_file(args.config)
            except OSError as exc:
                print(f"error: cannot read config: {exc}", file=sys.stderr)
                return 3
            config = replace(config, **overrides)
        if args.trials is not None:
            config = replace(config, trials=args.trials)
        if args.seed is not None:
            config = replace(config, seed=args.seed)
        config.validate()
        rows = run(config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        text = emit(rows, args.format, args.out)
        if args.out == "-":
            sys.stdout.write(text)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
