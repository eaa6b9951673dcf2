"""Serialization of experiment reports: JSON, CSV tables, plot-ready grids.

All numeric fields are written with 17 significant digits so every float
round-trips exactly; formatting is locale-independent and newline use is
fixed, so identical reports serialize to identical bytes on any platform.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .analytic import (
    EXACT_DENSITY_MAX_DIM,
    NormalApprox,
    exact_density,
    normal_pdf,
)
from .estimation import Histogram
from .experiment import DimensionReport, ExperimentConfig, ExperimentReport

OVERLAY_GRID_POINTS = 512

TABLE_COLUMNS = (
    "dim",
    "empirical_mean",
    "theoretical_mean",
    "empirical_variance",
    "theoretical_variance",
    "mean_dev_se",
    "var_dev_rel",
    "ks_exact",
    "ks_normal",
    "ks_crit_005",
    "ks_crit_001",
    "gof_backend",
)


def format_float(x: float) -> str:
    """Round-trippable decimal form: 17 significant digits, no grouping."""
    return f"{float(x):.17g}"


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, float):
        return format_float(value)
    return str(value)


# ---------------------------------------------------------------------------
# JSON report
# ---------------------------------------------------------------------------

def report_to_dict(report: ExperimentReport) -> dict:
    cfg = report.config
    rows = []
    for row in report.rows:
        hist = None
        if row.histogram is not None:
            hist = {
                "bin_edges": [float(e) for e in row.histogram.bin_edges],
                "counts": [int(c) for c in row.histogram.counts],
                "density_mode": row.histogram.density_mode,
            }
        rows.append(
            {
                "dim": row.dim,
                "empirical_mean": row.empirical_mean,
                "theoretical_mean": row.theoretical_mean,
                "empirical_variance": row.empirical_variance,
                "theoretical_variance": row.theoretical_variance,
                "mean_dev_se": row.mean_dev_se,
                "var_dev_rel": row.var_dev_rel,
                "ks_exact": row.ks_exact,
                "ks_normal": row.ks_normal,
                "ks_crit_005": row.ks_crit_005,
                "ks_crit_001": row.ks_crit_001,
                "gof_backend": row.gof_backend,
                "histogram": hist,
            }
        )
    return {
        "version": report.version,
        "variance_convention": report.variance_convention,
        "config": {
            "dims": list(cfg.dims),
            "num_pairs": cfg.num_pairs,
            "seed": cfg.seed,
            "bins": cfg.bins,
            "emit_histograms": cfg.emit_histograms,
            "emit_gof": cfg.emit_gof,
        },
        "rows": rows,
    }


def report_from_dict(data: dict) -> ExperimentReport:
    cfg = data["config"]
    config = ExperimentConfig(
        dims=tuple(cfg["dims"]),
        num_pairs=cfg["num_pairs"],
        seed=cfg["seed"],
        bins=cfg["bins"],
        emit_histograms=cfg["emit_histograms"],
        emit_gof=cfg["emit_gof"],
    )
    rows = []
    for r in data["rows"]:
        hist = None
        if r.get("histogram") is not None:
            h = r["histogram"]
            hist = Histogram(
                np.asarray(h["bin_edges"], dtype=np.float64),
                np.asarray(h["counts"], dtype=np.int64),
                h["density_mode"],
            )
        rows.append(
            DimensionReport(
                dim=r["dim"],
                empirical_mean=r["empirical_mean"],
                theoretical_mean=r["theoretical_mean"],
                empirical_variance=r["empirical_variance"],
                theoretical_variance=r["theoretical_variance"],
                mean_dev_se=r["mean_dev_se"],
                var_dev_rel=r["var_dev_rel"],
                ks_exact=r["ks_exact"],
                ks_normal=r["ks_normal"],
                ks_crit_005=r["ks_crit_005"],
                ks_crit_001=r["ks_crit_001"],
                gof_backend=r["gof_backend"],
                histogram=hist,
            )
        )
    return ExperimentReport(
        config=config,
        rows=tuple(rows),
        version=data["version"],
        variance_convention=data["variance_convention"],
    )


def dump_report_json(report: ExperimentReport) -> str:
    """Serialize with stable key order; includes the full config for provenance."""
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def write_report_json(report: ExperimentReport, path) -> Path:
    path = Path(path)
    path.write_text(dump_report_json(report), encoding="utf-8")
    return path


def load_report_json(path) -> ExperimentReport:
    return report_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


# ---------------------------------------------------------------------------
# CSV table
# ---------------------------------------------------------------------------

def _write_csv(path: Path, header, rows) -> Path:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


def write_table_csv(report: ExperimentReport, path) -> Path:
    """One CSV row per dimension, in sweep order."""
    rows = [
        [_cell(getattr(row, col)) for col in TABLE_COLUMNS] for row in report.rows
    ]
    return _write_csv(Path(path), TABLE_COLUMNS, rows)


def read_table_csv(path) -> list[dict]:
    """Parse a table CSV back into typed per-dimension dicts."""
    out = []
    with open(path, encoding="utf-8", newline="") as fh:
        for rec in csv.DictReader(fh):
            row = {}
            for col in TABLE_COLUMNS:
                raw = rec[col]
                if col == "dim":
                    row[col] = int(raw)
                elif col == "gof_backend":
                    row[col] = raw or None
                else:
                    row[col] = float(raw) if raw else None
            out.append(row)
    return out


def write_table_rows(rows: list[dict], path) -> Path:
    """Inverse of read_table_csv; rewriting parsed rows reproduces the bytes."""
    return _write_csv(
        Path(path), TABLE_COLUMNS, [[_cell(r[col]) for col in TABLE_COLUMNS] for r in rows]
    )


# ---------------------------------------------------------------------------
# Figure data (histogram + density overlays)
# ---------------------------------------------------------------------------

def emit_figure_data(report: ExperimentReport, out_dir) -> list[Path]:
    """Write per-dimension histogram and density-overlay CSV grids.

    `hist_n{dim}.csv` holds bin_left, bin_right, density. `overlay_n{dim}.csv`
    samples the reference densities on a 512-point grid over the histogram
    range: the exact density where the exact backend applies, and the normal
    approximation always. The exact column is simply absent above the
    backend ceiling.
    """
    if any(row.histogram is None for row in report.rows):
        raise ValueError(
            "report has no histograms; rerun with emit_histograms (CLI: --histograms)"
        )
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for row in report.rows:
        hist = row.histogram
        hist_path = out_dir / f"hist_n{row.dim}.csv"
        _write_csv(
            hist_path,
            ("bin_left", "bin_right", "density"),
            [
                [format_float(l), format_float(r), format_float(h)]
                for l, r, h in zip(hist.bin_edges[:-1], hist.bin_edges[1:], hist.heights)
            ],
        )
        paths.append(hist_path)

        xs = np.linspace(hist.bin_edges[0], hist.bin_edges[-1], OVERLAY_GRID_POINTS)
        approx = NormalApprox.for_dim(row.dim)
        normal = normal_pdf(approx, xs)
        overlay_path = out_dir / f"overlay_n{row.dim}.csv"
        if row.dim <= EXACT_DENSITY_MAX_DIM:
            exact = exact_density(row.dim).pdf(xs)
            _write_csv(
                overlay_path,
                ("x", "exact_pdf", "normal_pdf"),
                [
                    [format_float(x), format_float(e), format_float(n)]
                    for x, e, n in zip(xs, exact, normal)
                ],
            )
        else:
            _write_csv(
                overlay_path,
                ("x", "normal_pdf"),
                [[format_float(x), format_float(n)] for x, n in zip(xs, normal)],
            )
        paths.append(overlay_path)
    return paths


@dataclass(frozen=True)
class OutputBundle:
    """Paths written by one CLI run."""

    report_json: Path | None
    table_csv: Path | None
    figure_files: tuple[Path, ...] = ()


def write_bundle(
    report: ExperimentReport,
    out_dir,
    fmt: str = "both",
    figures: bool = False,
) -> OutputBundle:
    """Write the report files selected by `fmt` (csv, json or both)."""
    if fmt not in ("csv", "json", "both"):
        raise ValueError(f"unknown format {fmt!r}; use csv, json or both")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    report_path = None
    table_path = None
    if fmt in ("json", "both"):
        report_path = write_report_json(report, out_dir / "report.json")
    if fmt in ("csv", "both"):
        table_path = write_table_csv(report, out_dir / "table.csv")
    figure_files = tuple(emit_figure_data(report, out_dir)) if figures else ()
    return OutputBundle(report_path, table_path, figure_files)
