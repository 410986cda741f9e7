"""
Classical decomposition
=======================

"""

import numpy as np
from loadcast.decomposition import DecompositionModel, centered_trend, fit_decomposition, forecast_decomposition

# a growing trend times a 12-month pattern that averages to one
t = np.arange(36)
pattern = 1 + 0.25 * np.cos(2 * np.pi * t / 12)
y = (300 + 2.0 * t) * pattern

# 2x12 centered moving average: six undefined months at each end
trend = centered_trend(y, 12)
print("defined trend points:", np.isfinite(trend).sum(), "of", y.size)

# multiplicative model with the centered-MA trend estimator
model = DecompositionModel("multiplicative", centered=True, s=12)
fit = fit_decomposition(y[:30], model)
print("indices:", np.round(fit.indices, 4))
print("trend line: %.4f + %.4f t  (%d refinement passes)" % (fit.trend_intercept, fit.trend_slope, fit.iterations))

# extend six months and compare with the generator
print("forecast:", np.round(forecast_decomposition(fit, 6), 3))
print("truth:   ", np.round(y[30:], 3))

# additive form with a least-squares trend on the same data
add = fit_decomposition(y[:30], DecompositionModel("additive", centered=False, s=12))
print("additive in-sample max abs error: %.3f" % np.max(np.abs(add.irregular)))
