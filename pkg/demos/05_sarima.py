"""
Seasonal ARIMA by conditional sum of squares
============================================

"""

import numpy as np
from loadcast.arima import SarimaOrder, fit_sarima, forecast_sarima, select_order

# simulate a seasonal AR(1) with Phi=0.7 around a level of 100
rng = np.random.default_rng(4)
e = rng.normal(0, 1, 360)
w = np.zeros(360)
for t in range(12, 360):
    w[t] = 0.7 * w[t - 12] + e[t]
y = 100 + w[120:]

order = SarimaOrder(0, 0, 0, 1, 0, 0, s=12)
fit = fit_sarima(y, order)
print(order, "Phi_s = %.4f  mu = %.4f  sigma2 = %.4f" % (fit.Phi_s[0], fit.mu, fit.sigma2))

# forecasts reach back one season
print("next 6:", np.round(forecast_sarima(fit, 6), 3))

# order search over the small grid; takes a couple of seconds
print("selected:", select_order(y, 12))
