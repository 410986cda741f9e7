"""Classical additive and multiplicative decomposition forecasters.

Two trend estimators are available for seasonal-index estimation: a
least-squares line (standard decomposition) and the 2 x s centered moving
average. Indices are re-estimated against the trend of the deseasonalized
series until they stop changing, and forecasts extend a least-squares line
fitted to the deseasonalized data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .series import InsufficientDataError, as_array

Form = Literal["additive", "multiplicative"]


@dataclass(frozen=True)
class DecompositionModel:
    form: Form
    centered: bool
    s: int

    def __post_init__(self):
        if self.form not in ("additive", "multiplicative"):
            raise ValueError(f"unknown decomposition form {self.form!r}")
        if self.s < 2:
            raise ValueError("seasonal period must be at least 2")

    @property
    def multiplicative(self) -> bool:
        return self.form == "multiplicative"


@dataclass(frozen=True)
class DecompositionFit:
    model: DecompositionModel
    indices: np.ndarray
    trend_intercept: float
    trend_slope: float
    fitted: np.ndarray
    trend: np.ndarray
    seasonal: np.ndarray
    irregular: np.ndarray
    iterations: int

    @property
    def n(self) -> int:
        return self.fitted.size


def moving_average(values, k: int) -> np.ndarray:
    """Trailing k-term means; element i averages ``values[i:i+k]``."""
    y = as_array(values)
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > y.size:
        raise InsufficientDataError(f"moving average of {k} terms needs at least {k} values")
    csum = np.concatenate([[0.0], np.cumsum(y)])
    return (csum[k:] - csum[:-k]) / k


def centered_trend(values, s: int) -> np.ndarray:
    """2 x s centered moving average; the first and last s/2 positions are NaN."""
    y = as_array(values)
    if s % 2:
        raise ValueError("centered trend needs an even seasonal period")
    if y.size < s + 1:
        raise InsufficientDataError(f"centered trend needs at least {s + 1} values")
    weights = np.full(s + 1, 1.0 / s)
    weights[0] = weights[-1] = 0.5 / s
    half = s // 2
    out = np.full(y.size, np.nan)
    out[half : y.size - half] = np.convolve(y, weights, mode="valid")
    return out


def _line(z: np.ndarray) -> tuple[float, float]:
    t = np.arange(z.size, dtype=float)
    tc = t - t.mean()
    slope = float(np.dot(tc, z - z.mean()) / np.dot(tc, tc))
    return float(z.mean() - slope * t.mean()), slope


def _check_positive(arr: np.ndarray):
    finite = arr[np.isfinite(arr)]
    if np.any(finite <= 0):
        raise ValueError("multiplicative decomposition requires positive data")


def _trend_for(z: np.ndarray, model: DecompositionModel) -> np.ndarray:
    if model.centered:
        return centered_trend(z, model.s)
    intercept, slope = _line(z)
    return intercept + slope * np.arange(z.size)


def _indices_against(y: np.ndarray, trend: np.ndarray, model: DecompositionModel) -> np.ndarray:
    s = model.s
    if model.multiplicative:
        _check_positive(trend)
        detrended = y / trend
    else:
        detrended = y - trend
    phase = np.arange(y.size) % s
    raw = np.empty(s)
    for j in range(s):
        group = detrended[(phase == j) & np.isfinite(detrended)]
        raw[j] = group.mean()
    if model.multiplicative:
        return raw * s / raw.sum()
    return raw - raw.mean()


def _deseasonalize(y: np.ndarray, indices: np.ndarray, model: DecompositionModel) -> np.ndarray:
    seasonal = indices[np.arange(y.size) % model.s]
    return y / seasonal if model.multiplicative else y - seasonal


def _estimate(y: np.ndarray, model: DecompositionModel, max_iter: int, tol: float):
    if y.size < 2 * model.s:
        raise InsufficientDataError(
            f"decomposition with s={model.s} needs at least {2 * model.s} observations, got {y.size}"
        )
    if model.multiplicative:
        _check_positive(y)
    indices = _indices_against(y, _trend_for(y, model), model)
    iterations = 1
    scale = max(1.0, float(np.max(np.abs(indices))))
    for iterations in range(2, max_iter + 1):
        z = _deseasonalize(y, indices, model)
        updated = _indices_against(y, _trend_for(z, model), model)
        delta = float(np.max(np.abs(updated - indices)))
        indices = updated
        if delta <= tol * scale:
            break
    return indices, iterations


def seasonal_indices(train, model: DecompositionModel, max_iter: int = 500, tol: float = 1e-13) -> np.ndarray:
    """Normalized seasonal indices of ``train`` (phase 0 = first observation).

    Multiplicative indices sum to ``s``; additive indices sum to zero.
    """
    indices, _ = _estimate(as_array(train), model, max_iter, tol)
    return indices


def fit_decomposition(train, model: DecompositionModel, max_iter: int = 500, tol: float = 1e-13) -> DecompositionFit:
    y = as_array(train)
    indices, iterations = _estimate(y, model, max_iter, tol)
    intercept, slope = _line(_deseasonalize(y, indices, model))
    t = np.arange(y.size)
    trend = intercept + slope * t
    seasonal = indices[t % model.s]
    if model.multiplicative:
        _check_positive(trend)
        fitted = trend * seasonal
        irregular = y / fitted
    else:
        fitted = trend + seasonal
        irregular = y - fitted
    return DecompositionFit(
        model=model,
        indices=indices,
        trend_intercept=intercept,
        trend_slope=slope,
        fitted=fitted,
        trend=trend,
        seasonal=seasonal,
        irregular=irregular,
        iterations=iterations,
    )


def forecast_decomposition(fit: DecompositionFit, horizon: int) -> np.ndarray:
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    t = np.arange(fit.n, fit.n + horizon)
    trend = fit.trend_intercept + fit.trend_slope * t
    seasonal = fit.indices[t % fit.model.s]
    return trend * seasonal if fit.model.multiplicative else trend + seasonal
