import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from generators import normalized_pattern, trend_times_pattern
from loadcast.series import InsufficientDataError
from loadcast.smoothing import (
    SmoothingParams,
    fit_optimized,
    holt,
    holt_winters,
    optimize_params,
    ses,
    smoothing_msd,
)

series = st.lists(st.floats(1, 1000, allow_nan=False), min_size=3, max_size=30)


def hand_ses(y, alpha):
    # F_2 = Y_1, F_{t+1} = a Y_t + (1-a) F_t
    f = [y[0]]
    for t in range(1, len(y)):
        f.append(alpha * y[t] + (1 - alpha) * f[-1])
    return f  # f[k] forecasts y[k+1]


class TestSES:
    def test_alpha_one_is_naive(self):
        y = np.array([3.0, 8.0, 1.0, 9.0])
        fit = ses(y, 1.0)
        np.testing.assert_array_equal(fit.fitted[1:], y[:-1])
        np.testing.assert_array_equal(fit.forecast(3), [9.0] * 3)

    def test_alpha_zero_is_first_value(self):
        y = np.array([3.0, 8.0, 1.0, 9.0])
        fit = ses(y, 0.0)
        np.testing.assert_array_equal(fit.fitted[1:], 3.0)
        np.testing.assert_array_equal(fit.forecast(2), [3.0, 3.0])

    def test_two_points(self):
        assert ses([10, 20], 0.5).forecast(1)[0] == pytest.approx(15)

    def test_bad_alpha(self):
        with pytest.raises(ValueError):
            ses([1, 2], 1.5)

    @given(series, st.floats(0, 1))
    def test_hand_recursion_and_bounds(self, y, alpha):
        fit = ses(y, alpha)
        ref = hand_ses(y, alpha)
        np.testing.assert_allclose(fit.fitted[1:], ref[:-1], rtol=1e-12)
        assert fit.level == pytest.approx(ref[-1], rel=1e-12)
        assert min(y) - 1e-9 <= fit.level <= max(y) + 1e-9

    @given(series, st.floats(0, 1), st.integers(1, 10))
    def test_truncation(self, y, alpha, cut):
        # the forecast for t+1 only depends on data up to t
        cut = min(cut, len(y) - 1)
        full, part = ses(y, alpha), ses(y[:cut], alpha)
        np.testing.assert_allclose(full.fitted[:cut], part.fitted, rtol=1e-12, equal_nan=True)


class TestHolt:
    @given(st.floats(1, 100), st.floats(-2, 2), st.floats(0, 1), st.floats(0, 1))
    def test_continues_line(self, a, b, alpha, beta):
        y = a + b * np.arange(20.0) + 50
        fit = holt(y[:15], alpha, beta)
        np.testing.assert_allclose(fit.fitted[2:], y[2:15], rtol=1e-10)
        np.testing.assert_allclose(fit.forecast(5), y[15:], rtol=1e-10)

    def test_continues_geometric_series(self):
        y = 20 * 1.03 ** np.arange(16.0)
        fit = holt(y[:12], 0.4, 0.3, trend_form="multiplicative")
        np.testing.assert_allclose(fit.fitted[2:], y[2:12], rtol=1e-12)
        np.testing.assert_allclose(fit.forecast(4), y[12:], rtol=1e-12)

    def test_warmup_is_nan(self):
        fit = holt([1.0, 2.0, 4.0], 0.5, 0.5)
        assert np.isnan(fit.fitted[:2]).all() and fit.warmup == 2


class TestHoltWinters:
    def test_identity_seasonals_match_holt(self):
        L = 4
        rng = np.random.default_rng(5)
        y = np.concatenate([np.full(L, 50.0), 50 + np.cumsum(rng.uniform(-2, 4, 16))])
        alpha, beta = 0.37, 0.21
        hw = holt_winters(y, SmoothingParams(alpha, beta, 0.0), L)
        np.testing.assert_allclose(hw.seasonals, 1.0)
        level0 = y[:L].mean()
        trend0 = (y[L : 2 * L].mean() - level0) / L
        ref = holt(y[L - 1 :], alpha, beta, level0=level0, trend0=trend0)
        np.testing.assert_allclose(hw.fitted[L:], ref.fitted[1:], rtol=1e-9)
        np.testing.assert_allclose(hw.forecast(6), ref.forecast(6), rtol=1e-9)

    def test_too_short(self):
        with pytest.raises(InsufficientDataError, match="two full seasons"):
            holt_winters(np.ones(7), SmoothingParams(0.5, 0.5, 0.5), 4)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_recovers_trend_times_season(self, seed):
        m = normalized_pattern(4, seed, spread=0.3)
        y = trend_times_pattern(28, 10.0, 1.0, m)
        fit = fit_optimized(y[:24], "holt_winters", L=4)
        np.testing.assert_allclose(fit.forecast(4), y[24:], rtol=0.01)

    def test_deterministic(self):
        y = trend_times_pattern(36, 100.0, 0.5, normalized_pattern(12, 4))
        a = fit_optimized(y, "holt_winters", L=12)
        b = fit_optimized(y, "holt_winters", L=12)
        assert a.params == b.params
        np.testing.assert_array_equal(a.fitted, b.fitted)


def grid_min(y, kind, L=None, trend_form="additive"):
    axis = np.round(np.arange(0, 1.0001, 0.05), 10)
    d = {"ses": 1, "holt": 2, "holt_winters": 3}[kind]
    best = (np.inf, None)
    for point in itertools.product(axis, repeat=d):
        v = float(smoothing_msd(y, kind, np.array(point), L, trend_form)[0])
        best = min(best, (v, point))
    return best


class TestOptimizer:
    @pytest.mark.parametrize("kind, L, form", [("ses", None, "additive"), ("holt", None, "additive"),
                                               ("holt", None, "multiplicative"), ("holt_winters", 4, "additive")])
    def test_no_worse_than_grid(self, kind, L, form):
        rng = np.random.default_rng(9)
        y = 100 + np.cumsum(rng.normal(0, 3, 24)) + 10 * np.sin(np.arange(24))
        params = optimize_params(y, kind, L, form)
        x = np.array([v for v in (params.alpha, params.beta, params.gamma) if v is not None])
        got = float(smoothing_msd(y, kind, x, L, form)[0])
        assert got <= grid_min(y, kind, L, form)[0] * (1 + 1e-12)

    def test_noise_prefers_flat_smoothing(self):
        y = 100 + np.random.default_rng(0).normal(0, 5, 200)
        oracle = grid_min(y, "ses")[1][0]
        alpha = optimize_params(y, "ses").alpha
        assert oracle <= 0.1
        assert alpha <= 0.1

    def test_line_ties_go_to_smallest_grid_point(self):
        params = optimize_params(3 + 2 * np.arange(12.0), "holt")
        assert (params.alpha, params.beta) == (0.0, 0.0)

    def test_too_short(self):
        with pytest.raises(InsufficientDataError):
            optimize_params([1.0], "ses")
