"""
Trend plus seasonal dummies
===========================

"""

import numpy as np
from loadcast.regression import design_matrix, fit_regression, forecast_regression

# columns: intercept, time, one dummy per quarter except the first
print(design_matrix(6, 4))

# quarterly data: trend 5 per quarter, second quarter runs 40 high
t = np.arange(1, 13)
y = 200 + 5 * t + np.array([0, 40, -10, 25])[(t - 1) % 4]
fit = fit_regression(y, 4)
print("c0 %.4f  t0 %.4f  betas %s" % (fit.c0, fit.t0, np.round(fit.betas, 4)))

# the fitted surface repeats s quarters later, shifted by s*t0
print("next four quarters:", forecast_regression(fit, 4))
