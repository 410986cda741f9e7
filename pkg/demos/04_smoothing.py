"""
Exponential smoothing and fitted constants
==========================================

"""

import numpy as np
from loadcast.smoothing import SmoothingParams, fit_optimized, holt, holt_winters, optimize_params, ses

rng = np.random.default_rng(1)

# single smoothing: alpha=1 is the naive forecast, alpha=0 never moves from Y_1
y = 100 + rng.normal(0, 5, 24)
print("alpha=1 next:", ses(y, 1.0).forecast(1), "last obs:", y[-1])
print("alpha=0 next:", ses(y, 0.0).forecast(1), "first obs:", y[0])

# on pure noise the best constant is small: heavy averaging wins
print("optimized alpha on noise:", optimize_params(y, "ses"))

# Holt continues an exact line for any constants
line = 50 + 3 * np.arange(12.0)
print("Holt on a line:", holt(line, 0.3, 0.6).forecast(3))

# multiplicative Holt-Winters on a trend times a quarterly pattern
t = np.arange(28)
m = np.array([0.8, 1.3, 0.9, 1.0])
y = (10 + t) * m[t % 4]
fit = fit_optimized(y[:24], "holt_winters", L=4)
print("constants:", fit.params.as_dict())
print("forecast:", np.round(fit.forecast(4), 3), "truth:", y[24:])

# fixed constants are also accepted
print(holt_winters(y[:24], SmoothingParams(0.2, 0.1, 0.3), 4).forecast(2))
