"""CSV ingestion, the compare/validate/forecast pipeline and report emission."""

from __future__ import annotations

import csv
import json
import logging
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .catalog import ApproachResult, ApproachSpec, catalog_list, run_approach
from .evaluation import Ranking, approximation_pct_error, rank_models
from .series import MonthKey, MonthlySeries, TariffPeriod

logger = logging.getLogger(__name__)

VALUE_COLUMNS = tuple(p.column for p in TariffPeriod)
TABLES = ("errors_all", "best_models", "validation", "forecasts")


class DataError(ValueError):
    """Malformed or inconsistent input data."""


@dataclass
class Dataset:
    households: dict[str, dict[TariffPeriod, MonthlySeries]] = field(default_factory=dict)

    def add(self, name: str, series: dict[TariffPeriod, MonthlySeries]):
        if name in self.households:
            raise DataError(f"duplicate household name {name!r}")
        if TariffPeriod.TOTAL not in series:
            raise DataError(f"household {name!r} has no total consumption")
        first = next(iter(series.values()))
        for period, s in series.items():
            if s.start != first.start or len(s) != len(first):
                raise DataError(f"household {name!r}: {period.column} series is misaligned")
        self.households[name] = dict(series)

    def merge(self, other: "Dataset") -> "Dataset":
        out = Dataset(dict(self.households))
        for name, series in other.households.items():
            out.add(name, series)
        return out

    def cells(self) -> Iterable[tuple[str, TariffPeriod, MonthlySeries]]:
        for name, series in self.households.items():
            for period in TariffPeriod:
                if period in series:
                    yield name, period, series[period]


def load_csv(path, columns: Sequence[str] | None = None, household: str | None = None) -> Dataset:
    """Read one household's ``date,total[,day,peak,night]`` file.

    Dates are ``YYYY-MM`` in consecutive ascending order. ``total`` is always
    required and loaded; ``columns`` restricts which of the optional
    ``day``/``peak``/``night`` columns are read (absent ones are skipped).
    The household is named after the file stem unless ``household`` is given.
    """
    path = Path(path)
    name = household or path.stem
    with path.open(newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip().lower() for h in next(reader)]
        except StopIteration:
            raise DataError(f"{path}: empty file") from None
        if not header or header[0] != "date":
            raise DataError(f"{path}: first column must be 'date'")
        unknown = [h for h in header[1:] if h not in VALUE_COLUMNS]
        if unknown:
            raise DataError(f"{path}: unknown column(s) {', '.join(unknown)}")
        if "total" not in header:
            raise DataError(f"{path}: missing required column 'total'")
        requested = {c.strip().lower() for c in columns} if columns else set(VALUE_COLUMNS)
        unknown = requested - set(VALUE_COLUMNS)
        if unknown:
            raise DataError(f"unknown column(s) requested: {', '.join(sorted(unknown))}")
        wanted = [c for c in VALUE_COLUMNS if c in header and (c == "total" or c in requested)]
        positions = {c: header.index(c) for c in wanted}

        start = None
        expected = None
        values: dict[str, list[float]] = {c: [] for c in wanted}
        for row_no, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(header):
                raise DataError(f"{path}: row {row_no} has {len(row)} fields, expected {len(header)}")
            try:
                month = MonthKey.parse(row[0])
            except ValueError as exc:
                raise DataError(f"{path}: row {row_no}: {exc}") from None
            if expected is None:
                start = month
            elif month > expected:
                raise DataError(f"{path}: gap at {expected} (row {row_no} is {month})")
            elif month < expected:
                raise DataError(f"{path}: duplicate or out-of-order month {month} at row {row_no}")
            expected = month.next()
            for c, pos in positions.items():
                text = row[pos].strip()
                try:
                    v = float(text)
                except ValueError:
                    raise DataError(f"{path}: row {row_no}: non-numeric {c} value {text!r}") from None
                if not math.isfinite(v):
                    raise DataError(f"{path}: row {row_no}: non-finite {c} value {text!r}")
                if v < 0:
                    raise DataError(f"{path}: row {row_no}: negative {c} value {text!r}")
                values[c].append(v)
    if start is None:
        raise DataError(f"{path}: no data rows")
    data = Dataset()
    data.add(name, {TariffPeriod.from_column(c): MonthlySeries(start, v) for c, v in values.items()})
    return data


@dataclass(frozen=True)
class RunConfig:
    inputs: tuple[str, ...] = ()
    columns: tuple[str, ...] | None = None
    holdout: int = 1
    horizon: int = 3
    seasonality: str = "both"  # "12", "4" or "both"
    out_dir: str = "report"
    formats: tuple[str, ...] = ("json", "csv")
    sarima_s: int = 12

    def __post_init__(self):
        if self.holdout < 0:
            raise ValueError("holdout must be non-negative")
        if self.horizon < 1:
            raise ValueError("horizon must be at least 1")
        if self.seasonality not in ("12", "4", "both"):
            raise ValueError("seasonality must be 12, 4 or both")
        bad = set(self.formats) - {"json", "csv"}
        if bad:
            raise ValueError(f"unknown report format(s): {', '.join(sorted(bad))}")

    def specs(self) -> tuple[ApproachSpec, ...]:
        specs = catalog_list(self.sarima_s)
        if self.seasonality == "both":
            return specs
        return tuple(s for s in specs if s.s == int(self.seasonality))


@dataclass(frozen=True)
class ValidationRow:
    month: MonthKey
    basis: str  # "monthly" or "quarterly-mean"
    actual: float
    forecast: float
    ape_pct: float | None


@dataclass(frozen=True)
class Cell:
    household: str
    period: TariffPeriod
    series: MonthlySeries
    results: dict[int, ApproachResult]
    validation_ranking: Ranking | None
    forecast_ranking: Ranking | None
    validation: tuple[ValidationRow, ...]

    @property
    def validation_best(self) -> int | None:
        return self.validation_ranking.best if self.validation_ranking else None

    @property
    def forecast_best(self) -> int | None:
        return self.forecast_ranking.best if self.forecast_ranking else None


@dataclass(frozen=True)
class ComparisonReport:
    config: RunConfig
    cells: tuple[Cell, ...]


def _rank(results: Iterable[ApproachResult]) -> Ranking | None:
    triples = {r.spec.id: r.errors for r in results if r.ok}
    return rank_models(triples) if triples else None


def _validation_rows(cell_series: MonthlySeries, best: ApproachResult, holdout: int) -> tuple[ValidationRow, ...]:
    if holdout == 0:
        return ()
    months = cell_series.months()[-holdout:]
    actual = cell_series.values[-holdout:]
    forecast = best.holdout_forecast

    def ape(a, f):
        return approximation_pct_error(a, f) if a != 0 else None

    if best.spec.granularity == "quarterly":
        a, f = float(np.mean(actual)), float(np.mean(forecast))
        return (ValidationRow(months[0], "quarterly-mean", a, f, ape(a, f)),)
    return tuple(
        ValidationRow(m, "monthly", float(a), float(f), ape(float(a), float(f)))
        for m, a, f in zip(months, actual, forecast)
    )


def run_cell(cfg: RunConfig, household: str, period: TariffPeriod, series: MonthlySeries) -> Cell:
    specs = cfg.specs()
    results = {spec.id: run_approach(spec, series, cfg.holdout, cfg.horizon) for spec in specs}
    for r in results.values():
        if not r.ok:
            logger.info("%s/%s approach %d skipped: %s", household, period.column, r.spec.id, r.reason)
    monthly = [r for r in results.values() if r.spec.s == 12]
    validation_ranking = _rank(monthly if monthly else results.values())
    forecast_ranking = _rank(results.values())
    rows: tuple[ValidationRow, ...] = ()
    if validation_ranking is not None:
        rows = _validation_rows(series, results[validation_ranking.best], cfg.holdout)
    return Cell(household, period, series, results, validation_ranking, forecast_ranking, rows)


def run_comparison(cfg: RunConfig, data: Dataset) -> ComparisonReport:
    """Run every selected approach on every (household, period) series.

    Two rankings are kept per cell: one over the monthly (s=12) approaches,
    whose best model is checked against the holdout months, and one over all
    selected approaches, whose best model supplies the horizon forecasts.
    """
    periods = {TariffPeriod.from_column(c) for c in cfg.columns} if cfg.columns else set(TariffPeriod)
    cells = tuple(run_cell(cfg, h, p, s) for h, p, s in data.cells() if p in periods)
    if not cells:
        raise DataError("dataset contains no series")
    return ComparisonReport(cfg, cells)


# -- report tables ---------------------------------------------------------


def _num(x) -> float | None:
    if x is None:
        return None
    x = float(x)
    if not math.isfinite(x):
        return None
    return float(f"{x:.4f}")


def errors_table(report: ComparisonReport) -> list[dict]:
    rows = []
    for cell in report.cells:
        ranking = cell.forecast_ranking
        for aid, r in cell.results.items():
            ranks = ranking.ranks.get(aid) if ranking else None
            e = r.errors
            rows.append(
                {
                    "household": cell.household,
                    "period": cell.period.column,
                    "approach": aid,
                    "label": r.spec.label,
                    "seasonality": r.spec.s,
                    "granularity": r.spec.granularity,
                    "status": r.status,
                    "mape": _num(e.mape) if e else None,
                    "mad": _num(e.mad) if e else None,
                    "msd": _num(e.msd) if e else None,
                    "rank_mape": _num(ranks[0]) if ranks else None,
                    "rank_mad": _num(ranks[1]) if ranks else None,
                    "rank_msd": _num(ranks[2]) if ranks else None,
                    "rank_sum": _num(ranking.rank_sum[aid]) if ranks else None,
                    "detail": r.detail,
                    "reason": r.reason or "",
                }
            )
    return rows


def best_models_table(report: ComparisonReport, stages: Sequence[str] = ("validation", "forecast")) -> list[dict]:
    rows = []
    for stage in stages:
        for cell in report.cells:
            best = cell.validation_best if stage == "validation" else cell.forecast_best
            if best is None:
                continue
            r = cell.results[best]
            rows.append(
                {
                    "stage": stage,
                    "household": cell.household,
                    "period": cell.period.column,
                    "approach": best,
                    "label": r.spec.label,
                    "seasonality": r.spec.s,
                    "mape": _num(r.errors.mape),
                    "mad": _num(r.errors.mad),
                    "msd": _num(r.errors.msd),
                }
            )
    return rows


def validation_table(report: ComparisonReport) -> list[dict]:
    rows = []
    for cell in report.cells:
        for v in cell.validation:
            rows.append(
                {
                    "household": cell.household,
                    "period": cell.period.column,
                    "approach": cell.validation_best,
                    "month": str(v.month),
                    "basis": v.basis,
                    "actual": _num(v.actual),
                    "forecast": _num(v.forecast),
                    "ape_pct": _num(v.ape_pct),
                }
            )
    return rows


def forecasts_table(report: ComparisonReport) -> list[dict]:
    cfg = report.config
    rows = []
    for cell in report.cells:
        best = cell.forecast_best
        if best is None:
            continue
        r = cell.results[best]
        first = cell.series.end.next()
        row = {
            "household": cell.household,
            "period": cell.period.column,
            "approach": best,
            "label": r.spec.label,
            "first_month": str(first),
            "last_month": str(first.shift(cfg.horizon - 1)),
            "mean_forecast": _num(np.mean(r.horizon_forecast)),
        }
        for i, v in enumerate(r.horizon_forecast, 1):
            row[f"h{i}"] = _num(v)
        rows.append(row)
    return rows


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


def _write_csv(path: Path, rows: list[dict], columns: Sequence[str]):
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_csv_cell(row.get(c)) for c in columns])


def _write_json(path: Path, rows: list[dict]):
    path.write_text(json.dumps(rows, indent=2) + "\n", encoding="utf-8")


_COLUMNS = {
    "errors_all": (
        "household", "period", "approach", "label", "seasonality", "granularity", "status",
        "mape", "mad", "msd", "rank_mape", "rank_mad", "rank_msd", "rank_sum", "detail", "reason",
    ),
    "best_models": ("stage", "household", "period", "approach", "label", "seasonality", "mape", "mad", "msd"),
    "validation": ("household", "period", "approach", "month", "basis", "actual", "forecast", "ape_pct"),
}


def _ensure_dir(out_dir) -> Path:
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc}") from exc
    return out


def emit_report(
    report: ComparisonReport,
    out_dir,
    formats: Sequence[str] = ("json", "csv"),
    tables: Sequence[str] = TABLES,
    stages: Sequence[str] = ("validation", "forecast"),
) -> list[Path]:
    """Write the error, best-model, validation and forecast tables.

    Values carry four decimals; the JSON and CSV forms hold the same numbers.
    """
    out = _ensure_dir(out_dir)
    builders = {
        "errors_all": lambda: errors_table(report),
        "best_models": lambda: best_models_table(report, stages),
        "validation": lambda: validation_table(report),
        "forecasts": lambda: forecasts_table(report),
    }
    horizon_cols = tuple(f"h{i}" for i in range(1, report.config.horizon + 1))
    columns = dict(_COLUMNS)
    columns["forecasts"] = (
        "household", "period", "approach", "label", "first_month", "last_month", "mean_forecast",
    ) + horizon_cols
    written = []
    for name in tables:
        rows = builders[name]()
        for fmt in formats:
            path = out / f"{name}.{fmt}"
            if fmt == "json":
                _write_json(path, rows)
            else:
                _write_csv(path, rows, columns[name])
            written.append(path)
    return written


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", text).strip("_") or "household"


def plot_rows(report: ComparisonReport, cell: Cell) -> list[dict]:
    """Per-month rows pairing actuals with fitted, holdout and horizon forecasts."""
    cfg = report.config
    n = len(cell.series)
    n_train = n - cfg.holdout
    fit = cell.results.get(cell.forecast_best)
    val = cell.results.get(cell.validation_best)
    rows = []
    for t in range(n + cfg.horizon):
        row = {"t": t, "month": str(cell.series.start.shift(t)), "actual": None, "fitted": None,
               "validation_forecast": None, "forecast": None}
        if t < n:
            row["actual"] = _num(cell.series.values[t])
        if t < n_train and fit is not None:
            row["fitted"] = _num(fit.monthly_fitted[t])
        elif n_train <= t < n and val is not None:
            row["validation_forecast"] = _num(val.holdout_forecast[t - n_train])
        elif t >= n and fit is not None:
            row["forecast"] = _num(fit.horizon_forecast[t - n])
        rows.append(row)
    return rows


def emit_plot_data(report: ComparisonReport, out_dir) -> list[Path]:
    """Write ``plots/<household>_<period>.csv`` per cell plus ``plots/index.csv``."""
    plots = _ensure_dir(Path(out_dir) / "plots")
    columns = ("t", "month", "actual", "fitted", "validation_forecast", "forecast")
    index = []
    written = []
    for cell in report.cells:
        fname = f"{_slug(cell.household)}_{cell.period.column}.csv"
        _write_csv(plots / fname, plot_rows(report, cell), columns)
        written.append(plots / fname)
        index.append(
            {
                "household": cell.household,
                "period": cell.period.column,
                "file": fname,
                "fit_approach": cell.forecast_best,
                "validation_approach": cell.validation_best,
            }
        )
    _write_csv(plots / "index.csv", index, ("household", "period", "file", "fit_approach", "validation_approach"))
    written.append(plots / "index.csv")
    return written
