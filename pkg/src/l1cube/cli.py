"""Command-line entry point for the distance-concentration sweep.

Usage is `l1cube [options]`: run the sweep, print a per-dimension summary
table, and write report files. Options may also come from a config file of
`key = value` lines; explicit command-line flags win over the file.

Exit codes: 0 on success, 1 on runtime failure, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from ._version import __version__
from .experiment import (
    DEFAULT_DIMS,
    DEFAULT_NUM_PAIRS,
    ExperimentConfig,
    ExperimentReport,
    run_experiment,
)
from .output import write_bundle

DEFAULT_BINS = 30
DEFAULT_SEED = 0

_CONFIG_KEYS = ("dims", "pairs", "seed", "bins", "out", "format", "gof", "histograms")
_TRUE_WORDS = ("1", "true", "yes", "on")
_FALSE_WORDS = ("0", "false", "no", "off")


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise ValueError(f"invalid dims {text!r}: expected comma-separated integers")
    if not dims:
        raise ValueError("dims list is empty")
    return dims


def _parse_bool(key: str, text: str) -> bool:
    word = text.strip().lower()
    if word in _TRUE_WORDS:
        return True
    if word in _FALSE_WORDS:
        return False
    raise ValueError(f"invalid boolean for {key!r}: {text!r}")


def load_config_file(path) -> dict:
    """Parse a flat `key = value` file; `#` starts a comment, blanks ignored."""
    values: dict = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value, got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        if key == "dims":
            values[key] = _parse_dims(value)
        elif key in ("pairs", "seed", "bins"):
            values[key] = int(value)
        elif key in ("gof", "histograms"):
            values[key] = _parse_bool(key, value)
        else:
            values[key] = value
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="l1cube",
        description=(
            "Sample Manhattan distances between uniform random points in the "
            "unit hypercube and compare them with theory across dimensions."
        ),
    )
    # Defaults are None sentinels so config-file values can fill the gaps;
    # real defaults are applied after the merge.
    parser.add_argument(
        "--dims",
        type=_parse_dims,
        default=None,
        help=f"comma-separated dimensions (default {','.join(map(str, DEFAULT_DIMS))})",
    )
    parser.add_argument(
        "--pairs",
        type=int,
        default=None,
        help=f"point pairs sampled per dimension (default {DEFAULT_NUM_PAIRS})",
    )
    parser.add_argument(
        "--seed", type=int, default=None, help=f"root seed (default {DEFAULT_SEED})"
    )
    parser.add_argument(
        "--bins",
        type=int,
        default=None,
        help=f"histogram bin count (default {DEFAULT_BINS})",
    )
    parser.add_argument(
        "--out", default=None, help="output directory (default current directory)"
    )
    parser.add_argument(
        "--format",
        choices=("csv", "json", "both"),
        default=None,
        help="report formats to write (default both)",
    )
    parser.add_argument(
        "--gof",
        action="store_true",
        default=None,
        help="run goodness-of-fit tests per dimension",
    )
    parser.add_argument(
        "--histograms",
        action="store_true",
        default=None,
        help="bin the samples and emit per-dimension figure data",
    )
    parser.add_argument("--config", default=None, help="key = value config file")
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    return parser


def resolve_settings(args: argparse.Namespace) -> dict:
    """Merge precedence: command line, then config file, then defaults."""
    settings = {
        "dims": tuple(DEFAULT_DIMS),
        "pairs": DEFAULT_NUM_PAIRS,
        "seed": DEFAULT_SEED,
        "bins": DEFAULT_BINS,
        "out": ".",
        "format": "both",
        "gof": False,
        "histograms": False,
    }
    if args.config is not None:
        settings.update(load_config_file(args.config))
    for key in _CONFIG_KEYS:
        value = getattr(args, key)
        if value is not None:
            settings[key] = value
    return settings


def _validate_settings(settings: dict) -> None:
    """Reject bad inputs up front so they surface as usage errors, not crashes."""
    for dim in settings["dims"]:
        if dim < 1:
            raise ValueError(f"invalid dimension {dim}: dimensions must be >= 1")
    if settings["pairs"] < 2:
        raise ValueError(f"invalid pairs {settings['pairs']}: need at least 2 pairs")
    if not 0 <= settings["seed"] < 2**64:
        raise ValueError(
            f"invalid seed {settings['seed']}: must fit in an unsigned 64-bit integer"
        )
    if settings["bins"] < 1:
        raise ValueError(f"invalid bins {settings['bins']}: need at least one bin")
    if settings["format"] not in ("csv", "json", "both"):
        raise ValueError(
            f"invalid format {settings['format']!r}: choose csv, json, or both"
        )


def _prepare_out_dir(out) -> Path:
    path = Path(out)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {str(out)!r}: {exc}") from exc
    if not os.access(path, os.W_OK):
        raise OSError(f"output directory {str(out)!r} is not writable")
    return path


def _format_cell(value, width: int) -> str:
    if value is None:
        return "-".rjust(width)
    if isinstance(value, int):
        return str(value).rjust(width)
    return f"{value:.4f}".rjust(width)


def print_table(report: ExperimentReport, stream) -> None:
    columns = [
        ("dim", 4),
        ("empirical_mean", 14),
        ("theoretical_mean", 16),
        ("empirical_variance", 18),
        ("theoretical_variance", 20),
        ("mean_dev_se", 11),
        ("var_dev_rel", 11),
    ]
    if report.config.emit_gof:
        columns += [("ks_exact", 9), ("ks_normal", 9), ("ks_crit_005", 11)]
    print("  ".join(name.rjust(width) for name, width in columns), file=stream)
    for row in report.rows:
        print(
            "  ".join(
                _format_cell(getattr(row, name), width) for name, width in columns
            ),
            file=stream,
        )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help/--version and 2 for usage errors.
        return int(exc.code or 0)

    try:
        settings = resolve_settings(args)
        _validate_settings(settings)
        _prepare_out_dir(settings["out"])
        config = ExperimentConfig(
            dims=settings["dims"],
            num_pairs=settings["pairs"],
            seed=settings["seed"],
            bins=settings["bins"],
            emit_histograms=settings["histograms"],
            emit_gof=settings["gof"],
        )
    except (ValueError, OSError) as exc:
        # Bad flags, bad config-file entries, and unusable output directories
        # are all usage errors.
        print(f"l1cube: error: {exc}", file=sys.stderr)
        return 2

    try:
        report = run_experiment(config)
        bundle = write_bundle(
            report,
            settings["out"],
            fmt=settings["format"],
            figures=settings["histograms"],
        )
    except Exception as exc:
        print(f"l1cube: error: {exc}", file=sys.stderr)
        return 1

    print_table(report, sys.stdout)
    written = [
        str(p)
        for p in (bundle.report_json, bundle.table_csv)
        if p is not None
    ]
    if bundle.figure_files:
        written.append(f"{len(bundle.figure_files)} figure files")
    print(
        f"ran {len(report.rows)} dimensions x {config.num_pairs} pairs "
        f"(seed {config.seed}); wrote {', '.join(written)}"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
