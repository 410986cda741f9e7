"""Single, double (Holt) and multiplicative Holt-Winters exponential smoothing.

The recursions accept smoothing constants as scalars or as equally shaped
arrays, so a whole parameter grid can be run in one pass over the data.
Fitted values are one-step-ahead forecasts; positions used to initialize the
state carry NaN instead of a forecast.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Literal

import numpy as np

from ._search import coordinate_search
from .series import InsufficientDataError, as_array

TrendForm = Literal["additive", "multiplicative"]
ModelKind = Literal["ses", "holt", "holt_winters"]

GRID_STEP = 0.05
MIN_STEP = 1e-3


@dataclass(frozen=True)
class SmoothingParams:
    alpha: float
    beta: float | None = None
    gamma: float | None = None

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            value = getattr(self, name)
            if value is not None and not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        if self.gamma is not None and self.beta is None:
            raise ValueError("gamma requires beta")

    def as_dict(self) -> dict[str, float]:
        return {k: v for k, v in (("alpha", self.alpha), ("beta", self.beta), ("gamma", self.gamma)) if v is not None}


@dataclass(frozen=True)
class SmoothingFit:
    kind: ModelKind
    params: SmoothingParams
    level: float
    trend: float | None
    seasonals: np.ndarray | None  # the last L indices, oldest first
    fitted: np.ndarray
    warmup: int
    trend_form: TrendForm | None = None

    def forecast(self, horizon: int) -> np.ndarray:
        if horizon < 1:
            raise ValueError("horizon must be at least 1")
        p = np.arange(1, horizon + 1, dtype=float)
        if self.kind == "ses":
            return np.full(horizon, self.level)
        if self.kind == "holt":
            if self.trend_form == "multiplicative":
                return self.level * self.trend**p
            return self.level + p * self.trend
        L = self.seasonals.size
        return (self.level + p * self.trend) * self.seasonals[(np.arange(horizon)) % L]


def _check_unit(name: str, value):
    arr = np.asarray(value, dtype=float)
    if np.any((arr < 0) | (arr > 1)) or np.any(np.isnan(arr)):
        raise ValueError(f"{name} must lie in [0, 1]")


def _ses_path(y: np.ndarray, alpha):
    alpha = np.asarray(alpha, dtype=float)
    fitted = np.empty((y.size,) + alpha.shape)
    f = np.full(alpha.shape, y[0])
    fitted[0] = np.nan
    for t in range(1, y.size):
        f = alpha * y[t - 1] + (1.0 - alpha) * f
        fitted[t] = f
    level = alpha * y[-1] + (1.0 - alpha) * f
    return fitted, level


def _holt_path(y: np.ndarray, alpha, beta, form: TrendForm, level0=None, trend0=None):
    alpha, beta = np.broadcast_arrays(np.asarray(alpha, float), np.asarray(beta, float))
    mult = form == "multiplicative"
    if level0 is None:
        level0 = y[0]
        trend0 = y[1] / y[0] if mult else y[1] - y[0]
        warmup = 2
    else:
        warmup = 1
    fitted = np.full((y.size,) + alpha.shape, np.nan)
    c = np.full(alpha.shape, float(level0))
    b = np.full(alpha.shape, float(trend0))
    for t in range(1, y.size):
        f = c * b if mult else c + b
        if t >= warmup:
            fitted[t] = f
        c_new = alpha * y[t] + (1.0 - alpha) * f
        if mult:
            b = beta * (c_new / c) + (1.0 - beta) * b
        else:
            b = beta * (c_new - c) + (1.0 - beta) * b
        c = c_new
    return fitted, c, b, warmup


def _hw_init(y: np.ndarray, L: int):
    first = y[:L].mean()
    second = y[L : 2 * L].mean()
    seasonals = y[:L] / first
    return first, (second - first) / L, seasonals * L / seasonals.sum()


def _hw_path(y: np.ndarray, alpha, beta, gamma, L: int, init=None):
    alpha, beta, gamma = np.broadcast_arrays(*(np.asarray(v, float) for v in (alpha, beta, gamma)))
    level0, trend0, seasonals0 = _hw_init(y, L) if init is None else init
    shape = alpha.shape
    fitted = np.full((y.size,) + shape, np.nan)
    level = np.full(shape, float(level0))
    trend = np.full(shape, float(trend0))
    seas = np.empty((y.size,) + shape)
    seas[:L] = np.asarray(seasonals0, float).reshape((L,) + (1,) * len(shape))
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for t in range(L, y.size):
            prev = seas[t - L]
            fitted[t] = (level + trend) * prev
            new_level = alpha * y[t] / prev + (1.0 - alpha) * (level + trend)
            trend = beta * (new_level - level) + (1.0 - beta) * trend
            seas[t] = gamma * y[t] / new_level + (1.0 - gamma) * prev
            level = new_level
    return fitted, level, trend, seas[y.size - L :]


def ses(train, alpha: float) -> SmoothingFit:
    """Single exponential smoothing with ``F_1 = Y_1``; forecasts are flat."""
    y = as_array(train)
    if y.size < 1:
        raise InsufficientDataError("single smoothing needs at least one value")
    _check_unit("alpha", alpha)
    fitted, level = _ses_path(y, float(alpha))
    return SmoothingFit("ses", SmoothingParams(float(alpha)), float(level), None, None, fitted, 1)


def holt(
    train,
    alpha: float,
    beta: float,
    trend_form: TrendForm = "additive",
    level0: float | None = None,
    trend0: float | None = None,
) -> SmoothingFit:
    """Double exponential smoothing with an additive or multiplicative trend.

    By default the state starts at ``C_1 = Y_1`` with the trend taken from the
    first two observations. ``level0``/``trend0`` override that state; it is
    then treated as the state after the first observation.
    """
    y = as_array(train)
    if trend_form not in ("additive", "multiplicative"):
        raise ValueError(f"unknown trend form {trend_form!r}")
    if y.size < 2:
        raise InsufficientDataError("double smoothing needs at least two values")
    _check_unit("alpha", alpha)
    _check_unit("beta", beta)
    if (level0 is None) != (trend0 is None):
        raise ValueError("level0 and trend0 must be given together")
    if trend_form == "multiplicative" and np.any(y <= 0):
        raise ValueError("multiplicative trend requires positive data")
    fitted, level, trend, warmup = _holt_path(y, float(alpha), float(beta), trend_form, level0, trend0)
    return SmoothingFit(
        "holt",
        SmoothingParams(float(alpha), float(beta)),
        float(level),
        float(trend),
        None,
        fitted,
        warmup,
        trend_form,
    )


def holt_winters(train, params: SmoothingParams, L: int, init=None) -> SmoothingFit:
    """Multiplicative-seasonal Holt-Winters smoothing with period ``L``.

    Args:
        train: observations, strictly positive.
        params: alpha, beta and gamma.
        L: season length.
        init: optional ``(level, trend, seasonals)`` state at the end of the
            first season; defaults to first-season mean, the season-over-season
            mean change divided by ``L``, and first-season ratios to its mean.
    """
    y = as_array(train)
    if y.size < 2 * L:
        raise InsufficientDataError(f"need two full seasons ({2 * L} values), got {y.size}")
    if params.beta is None or params.gamma is None:
        raise ValueError("Holt-Winters needs alpha, beta and gamma")
    if np.any(y <= 0):
        raise ValueError("multiplicative seasonality requires positive data")
    fitted, level, trend, seas = _hw_path(y, params.alpha, params.beta, params.gamma, L, init)
    if not (np.isfinite(level) and level > 0 and np.all(np.isfinite(seas))):
        raise ValueError("Holt-Winters state degenerated (nonpositive level)")
    return SmoothingFit("holt_winters", params, float(level), float(trend), np.array(seas, dtype=float), fitted, L)


def _grid(d: int) -> np.ndarray:
    axis = np.round(np.arange(0, 1 + GRID_STEP / 2, GRID_STEP), 10)
    return np.array(list(itertools.product(axis, repeat=d)))


def _msd_columns(y: np.ndarray, fitted: np.ndarray, warmup: int) -> np.ndarray:
    err = fitted[warmup:] - y[warmup:].reshape((-1,) + (1,) * (fitted.ndim - 1))
    with np.errstate(over="ignore", invalid="ignore"):
        out = np.mean(err**2, axis=0)
    return np.where(np.isfinite(out), out, np.inf)


def smoothing_msd(train, kind: ModelKind, params, L: int | None = None, trend_form: TrendForm = "additive") -> np.ndarray:
    """In-sample one-step MSD for one parameter vector or an ``(m, d)`` batch."""
    y = as_array(train)
    P = np.atleast_2d(np.asarray(params, dtype=float))
    if kind == "ses":
        fitted, _ = _ses_path(y, P[:, 0])
        return _msd_columns(y, fitted, 1)
    if kind == "holt":
        fitted, _, _, warmup = _holt_path(y, P[:, 0], P[:, 1], trend_form)
        return _msd_columns(y, fitted, warmup)
    if kind == "holt_winters":
        fitted, level, _, _ = _hw_path(y, P[:, 0], P[:, 1], P[:, 2], L)
        out = _msd_columns(y, fitted, L)
        return np.where(level > 0, out, np.inf)
    raise ValueError(f"unknown smoothing model {kind!r}")


def _min_length(kind: ModelKind, L: int | None) -> int:
    return {"ses": 2, "holt": 3}.get(kind) or 2 * L


def optimize_params(
    train,
    kind: ModelKind,
    L: int | None = None,
    trend_form: TrendForm = "additive",
) -> SmoothingParams:
    """Smoothing constants minimizing in-sample one-step MSD.

    A 0.05 grid over ``[0, 1]^d`` is searched exhaustively; the best grid
    point (ties go to the smaller alpha, then beta, then gamma) is refined by
    coordinate search with step halving down to 1e-3.
    """
    y = as_array(train)
    if kind == "holt_winters" and L is None:
        raise ValueError("Holt-Winters optimization needs the season length L")
    need = _min_length(kind, L)
    if y.size < need:
        raise InsufficientDataError(f"{kind} optimization needs at least {need} values, got {y.size}")
    if kind == "holt_winters" or trend_form == "multiplicative" and kind == "holt":
        if np.any(y <= 0):
            raise ValueError("multiplicative smoothing requires positive data")
    d = {"ses": 1, "holt": 2, "holt_winters": 3}[kind]
    grid = _grid(d)
    scores = smoothing_msd(y, kind, grid, L, trend_form)
    best = float(scores.min())
    if not np.isfinite(best):
        raise ValueError(f"{kind}: no admissible smoothing constants on the grid")
    # float-level ties resolve toward the lexicographically smallest grid point
    tie = 1e-12 * best + 1e-20 * float(np.mean(y**2))
    start = int(np.flatnonzero(scores <= best + tie)[0])

    def objective(x):
        return float(smoothing_msd(y, kind, x, L, trend_form)[0])

    result = coordinate_search(
        objective, grid[start], 0.0, 1.0, GRID_STEP / 2, MIN_STEP, f0=float(scores[start])
    )
    x = [float(v) for v in result.x]
    return SmoothingParams(*x)


def fit_optimized(train, kind: ModelKind, L: int | None = None, trend_form: TrendForm = "additive") -> SmoothingFit:
    params = optimize_params(train, kind, L, trend_form)
    if kind == "ses":
        return ses(train, params.alpha)
    if kind == "holt":
        return holt(train, params.alpha, params.beta, trend_form)
    return holt_winters(train, params, L)
