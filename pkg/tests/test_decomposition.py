import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from generators import normalized_pattern, trend_plus_pattern, trend_times_pattern
from loadcast.decomposition import (
    DecompositionModel,
    centered_trend,
    fit_decomposition,
    forecast_decomposition,
    moving_average,
    seasonal_indices,
)
from loadcast.series import InsufficientDataError

MODELS = [
    DecompositionModel(form, centered, s)
    for form in ("additive", "multiplicative")
    for centered in (False, True)
    for s in (4, 12)
]


def loop_centered(y, s):
    # half-weighted ends, full weight inside
    h = s // 2
    out = [np.nan] * len(y)
    for t in range(h, len(y) - h):
        acc = 0.5 * y[t - h] + 0.5 * y[t + h] + sum(y[t - h + 1 : t + h])
        out[t] = acc / s
    return np.array(out)


class TestMovingAverages:
    def test_examples(self):
        np.testing.assert_allclose(moving_average([2, 2, 2], 2), [2, 2])
        np.testing.assert_allclose(moving_average([1, 2, 3, 4], 3), [2, 3])
        with pytest.raises(InsufficientDataError):
            moving_average([1], 2)

    def test_centered_examples(self):
        out = centered_trend([1, 2, 3, 4, 5, 6], 4)
        assert np.isnan(out[[0, 1, 4, 5]]).all()
        np.testing.assert_allclose(out[2:4], [3, 4])
        np.testing.assert_allclose(centered_trend(np.full(9, 7.0), 4)[2:7], 7.0)
        with pytest.raises(InsufficientDataError):
            centered_trend([1, 2, 3, 4], 4)

    @given(st.lists(st.floats(0, 1000, allow_nan=False), min_size=13, max_size=40), st.sampled_from([4, 12]))
    def test_centered_matches_loop(self, vals, s):
        np.testing.assert_allclose(centered_trend(vals, s), loop_centered(vals, s), rtol=1e-12, atol=1e-9)


class TestIndices:
    def test_alternating_pattern(self):
        y = 10 * np.tile([0.5, 1.5], 8)
        model = DecompositionModel("multiplicative", False, 4)
        np.testing.assert_allclose(seasonal_indices(y, model), [0.5, 1.5, 0.5, 1.5], atol=1e-12)

    @pytest.mark.parametrize("centered", [False, True])
    def test_constant_series(self, centered):
        y = np.full(24, 42.0)
        np.testing.assert_allclose(seasonal_indices(y, DecompositionModel("additive", centered, 4)), 0, atol=1e-12)
        np.testing.assert_allclose(seasonal_indices(y, DecompositionModel("multiplicative", centered, 4)), 1, atol=1e-12)

    def test_nonpositive_multiplicative(self):
        y = np.full(24, 5.0)
        y[3] = -1
        with pytest.raises(ValueError, match="requires positive data"):
            seasonal_indices(y, DecompositionModel("multiplicative", False, 4))

    def test_too_short(self):
        with pytest.raises(InsufficientDataError):
            fit_decomposition(np.ones(23), DecompositionModel("additive", False, 12))

    @pytest.mark.parametrize("model", MODELS, ids=str)
    def test_normalization(self, model):
        rng = np.random.default_rng(3)
        y = 50 + rng.uniform(0, 20, 36)
        idx = seasonal_indices(y, model)
        target = model.s if model.multiplicative else 0.0
        assert idx.sum() == pytest.approx(target, abs=1e-9)


class TestFit:
    def test_line_without_season(self):
        y = 5 + 2 * np.arange(16.0)
        fit = fit_decomposition(y, DecompositionModel("additive", False, 4))
        assert fit.trend_slope == pytest.approx(2)
        assert fit.trend_intercept == pytest.approx(5)
        np.testing.assert_allclose(fit.indices, 0, atol=1e-12)
        np.testing.assert_allclose(fit.fitted, y, rtol=1e-12)

    def test_forecast_line(self):
        y = 5 + 2 * np.arange(8.0)
        fit = fit_decomposition(y, DecompositionModel("additive", False, 4))
        np.testing.assert_allclose(forecast_decomposition(fit, 2), [21, 23], rtol=1e-12)
        with pytest.raises(ValueError):
            forecast_decomposition(fit, 0)

    @pytest.mark.parametrize("model", MODELS, ids=str)
    def test_exact_recovery(self, model):
        n = 3 * model.s + 5
        m = normalized_pattern(model.s, seed=model.s, multiplicative=model.multiplicative)
        if model.multiplicative:
            y = trend_times_pattern(n + 3, 10.0, 1.0, m)
        else:
            y = trend_plus_pattern(n + 3, 10.0, 1.0, m)
        fit = fit_decomposition(y[:n], model)
        np.testing.assert_allclose(fit.indices, m, atol=1e-6)
        assert fit.trend_slope == pytest.approx(1.0, abs=1e-6)
        assert fit.trend_intercept == pytest.approx(10.0, abs=1e-6)
        np.testing.assert_allclose(forecast_decomposition(fit, 3), y[n:], rtol=1e-9)

    @settings(max_examples=25, deadline=None)
    @given(st.floats(-50, 50), st.integers(0, 10_000))
    def test_additive_shift_equivariance(self, c, seed):
        rng = np.random.default_rng(seed)
        y = 100 + rng.uniform(0, 30, 24)
        model = DecompositionModel("additive", True, 4)
        a, b = fit_decomposition(y, model), fit_decomposition(y + c, model)
        np.testing.assert_allclose(b.indices, a.indices, atol=1e-9)
        assert b.trend_slope == pytest.approx(a.trend_slope, abs=1e-9)
        assert b.trend_intercept == pytest.approx(a.trend_intercept + c, abs=1e-9)

    @settings(max_examples=25, deadline=None)
    @given(st.floats(0.1, 10), st.integers(0, 10_000))
    def test_multiplicative_scale_invariance(self, c, seed):
        rng = np.random.default_rng(seed)
        y = 100 + rng.uniform(0, 30, 24)
        model = DecompositionModel("multiplicative", False, 4)
        a, b = fit_decomposition(y, model), fit_decomposition(c * y, model)
        np.testing.assert_allclose(b.indices, a.indices, rtol=1e-9)
        np.testing.assert_allclose(b.trend, c * a.trend, rtol=1e-9)

    def test_negative_value(self):
        with pytest.raises(ValueError):
            fit_decomposition([5, 6, 7, -1, 5, 6, 7, 8], DecompositionModel("multiplicative", False, 4))
