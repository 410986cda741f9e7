"""Registry of the nineteen forecasting approaches behind one fit/forecast contract."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

import numpy as np

from . import arima, decomposition, regression, smoothing
from .evaluation import ErrorTriple, error_triple
from .series import MonthlySeries, aggregate_quarterly, as_array, split_holdout


class Family(str, enum.Enum):
    DECOMPOSITION = "decomposition"
    REGRESSION = "regression"
    SES = "ses"
    HOLT = "holt"
    HOLT_WINTERS = "holt_winters"
    SARIMA = "sarima"


class ApproachError(RuntimeError):
    def __init__(self, approach_id: int, message: str):
        super().__init__(f"approach {approach_id}: {message}")
        self.approach_id = approach_id


@dataclass(frozen=True)
class ApproachSpec:
    id: int
    family: Family
    label: str
    s: int
    form: str | None = None
    centered: bool | None = None

    @property
    def granularity(self) -> str:
        return "quarterly" if self.s == 4 else "monthly"


def _spec(id, family, label, s, form=None, centered=None):
    return ApproachSpec(id, family, label, s, form, centered)


_D, _R, _S, _H, _W = Family.DECOMPOSITION, Family.REGRESSION, Family.SES, Family.HOLT, Family.HOLT_WINTERS

CATALOG: tuple[ApproachSpec, ...] = (
    _spec(1, _D, "decomposition, multiplicative", 12, "multiplicative", False),
    _spec(2, _D, "decomposition, multiplicative", 4, "multiplicative", False),
    _spec(3, _D, "decomposition, additive", 12, "additive", False),
    _spec(4, _D, "decomposition, additive", 4, "additive", False),
    _spec(5, _D, "centered-MA decomposition, multiplicative", 12, "multiplicative", True),
    _spec(6, _D, "centered-MA decomposition, multiplicative", 4, "multiplicative", True),
    _spec(7, _D, "centered-MA decomposition, additive", 12, "additive", True),
    _spec(8, _D, "centered-MA decomposition, additive", 4, "additive", True),
    _spec(9, _R, "seasonal-dummy regression", 12),
    _spec(10, _R, "seasonal-dummy regression", 4),
    _spec(11, _S, "single exponential smoothing", 12),
    _spec(12, _S, "single exponential smoothing", 4),
    _spec(13, _H, "double exponential smoothing, multiplicative trend", 12, "multiplicative"),
    _spec(14, _H, "double exponential smoothing, additive trend", 12, "additive"),
    _spec(15, _H, "double exponential smoothing, multiplicative trend", 4, "multiplicative"),
    _spec(16, _H, "double exponential smoothing, additive trend", 4, "additive"),
    _spec(17, _W, "Holt-Winters, optimized constants", 12),
    _spec(18, _W, "Holt-Winters, optimized constants", 4),
    _spec(19, Family.SARIMA, "seasonal ARIMA, AICc order selection", 12),
)

# shortest monthly training window each approach accepts
MIN_MONTHS = {
    Family.DECOMPOSITION: {12: 24, 4: 24},
    Family.REGRESSION: {12: 13, 4: 15},
    Family.SES: {12: 2, 4: 6},
    Family.HOLT: {12: 3, 4: 9},
    Family.HOLT_WINTERS: {12: 24, 4: 24},
    Family.SARIMA: {12: 5, 4: 15},
}


def catalog_list(sarima_s: int = 12) -> tuple[ApproachSpec, ...]:
    """All nineteen approaches in id order; ``sarima_s=4`` runs approach 19 on quarterly data."""
    if sarima_s not in (4, 12):
        raise ValueError("SARIMA seasonality must be 4 or 12")
    if sarima_s == 12:
        return CATALOG
    return CATALOG[:-1] + (replace(CATALOG[-1], s=4),)


def get_spec(approach_id: int, sarima_s: int = 12) -> ApproachSpec:
    for spec in catalog_list(sarima_s):
        if spec.id == approach_id:
            return spec
    raise KeyError(f"no approach with id {approach_id}")


@dataclass(frozen=True)
class ApproachResult:
    spec: ApproachSpec
    status: str  # "ok" or "skipped"
    reason: str | None = None
    params: dict[str, float] = field(default_factory=dict)
    detail: str = ""
    errors: ErrorTriple | None = None
    actual: np.ndarray | None = None  # training data at model granularity
    fitted: np.ndarray | None = None  # same granularity, NaN during warm-up
    monthly_fitted: np.ndarray | None = None
    holdout_forecast: np.ndarray | None = None  # one value per holdout month
    horizon_forecast: np.ndarray | None = None  # one value per horizon month

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def in_sample_errors(actual, fitted) -> ErrorTriple:
    """Error measures over the positions where a fitted value exists."""
    a, f = as_array(actual), as_array(fitted)
    mask = np.isfinite(f)
    if not mask.any():
        raise ValueError("no fitted values to score")
    return error_triple(a[mask], f[mask])


def _fit(spec: ApproachSpec, y: np.ndarray):
    """Return (fitted, forecast(h), params, detail)."""
    s = spec.s
    if spec.family is Family.DECOMPOSITION:
        fit = decomposition.fit_decomposition(y, decomposition.DecompositionModel(spec.form, spec.centered, s))
        params = {"intercept": fit.trend_intercept, "slope": fit.trend_slope}
        params.update({f"index{j + 1}": float(v) for j, v in enumerate(fit.indices)})
        return fit.fitted, lambda h: decomposition.forecast_decomposition(fit, h), params, ""
    if spec.family is Family.REGRESSION:
        fit = regression.fit_regression(y, s)
        params = {"c0": fit.c0, "t0": fit.t0}
        params.update({f"beta{j + 2}": float(v) for j, v in enumerate(fit.betas)})
        return fit.fitted, lambda h: regression.forecast_regression(fit, h), params, ""
    if spec.family in (Family.SES, Family.HOLT, Family.HOLT_WINTERS):
        kind = {Family.SES: "ses", Family.HOLT: "holt", Family.HOLT_WINTERS: "holt_winters"}[spec.family]
        fit = smoothing.fit_optimized(y, kind, L=s if kind == "holt_winters" else None, trend_form=spec.form or "additive")
        return fit.fitted, fit.forecast, fit.params.as_dict(), ""
    if spec.family is Family.SARIMA:
        order = arima.select_order(y, s)
        fit = arima.fit_sarima(y, order)
        detail = str(order) + ("" if fit.converged else " (not converged)")
        return fit.fitted, lambda h: arima.forecast_sarima(fit, h), fit.param_dict(), detail
    raise ApproachError(spec.id, f"unknown family {spec.family}")


def run_approach(spec: ApproachSpec, series: MonthlySeries, holdout: int = 1, horizon: int = 3) -> ApproachResult:
    """Fit one approach on the training part of ``series`` and forecast.

    The last ``holdout`` months are withheld; forecasts cover them and then
    ``horizon`` further months. Quarterly approaches work on 3-month block
    means anchored at the series start, and each forecast month receives the
    mean forecast of the block it falls in. Approaches that cannot run on the
    data come back with ``status="skipped"`` and a reason.
    """
    if not 0 <= holdout < len(series):
        raise ValueError(f"holdout {holdout} out of range for series of length {len(series)}")
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    train = split_holdout(series, holdout)[0] if holdout else series
    n_months = len(train)
    quarterly = spec.granularity == "quarterly"

    def skipped(reason: str) -> ApproachResult:
        return ApproachResult(spec, "skipped", reason)

    try:
        y = aggregate_quarterly(train).values if quarterly else train.values
        fitted, forecast, params, detail = _fit(spec, np.asarray(y, dtype=float))
        errors = in_sample_errors(y, fitted)
        ahead = holdout + horizon
        if quarterly:
            first_block = n_months // 3
            blocks = (n_months + ahead - 1) // 3 - first_block + 1
            block_values = np.asarray(forecast(blocks), dtype=float)
            months = np.arange(n_months, n_months + ahead)
            path = block_values[months // 3 - first_block]
            monthly_fitted = np.concatenate(
                [np.repeat(fitted, 3), np.full(n_months - 3 * len(y), block_values[0])]
            )
        else:
            path = np.asarray(forecast(ahead), dtype=float)
            monthly_fitted = np.asarray(fitted, dtype=float)
    except ValueError as exc:
        return skipped(str(exc))
    except ApproachError:
        raise
    except Exception as exc:  # pragma: no cover - unexpected numerical failures
        raise ApproachError(spec.id, repr(exc)) from exc
    if not np.all(np.isfinite(path)):
        return skipped("non-finite forecast")
    return ApproachResult(
        spec=spec,
        status="ok",
        params={k: float(v) for k, v in params.items()},
        detail=detail,
        errors=errors,
        actual=np.asarray(y, dtype=float),
        fitted=np.asarray(fitted, dtype=float),
        monthly_fitted=monthly_fitted,
        holdout_forecast=path[:holdout],
        horizon_forecast=path[holdout:],
    )
