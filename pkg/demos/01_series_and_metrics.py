"""
Monthly series, quarterly blocks and error measures
===================================================

"""

# a short monthly consumption record starting May 2014
import numpy as np
from loadcast import MonthKey, MonthlySeries, aggregate_quarterly, split_holdout
from loadcast import mad, msd, mape, approximation_pct_error

kwh = MonthlySeries(MonthKey(2014, 5), [410.0, 380.5, 362.0, 395.2, 441.7, 470.3, 455.0])
print(kwh.start, "->", kwh.end, len(kwh), "months")

# quarterly blocks are 3-month means anchored at the first month; the tail is dropped
q = aggregate_quarterly(kwh)
print("quarterly means:", q.values)

# withhold the last month for validation
train, test = split_holdout(kwh, 1)
print("train ends", train.end, "| test month", test.start, test.values)

# three error measures on a naive forecast (previous month)
actual, naive = kwh.values[1:], kwh.values[:-1]
print("MAD  %.4f" % mad(actual, naive))
print("MSD  %.4f" % msd(actual, naive))
print("MAPE %.4f %%" % mape(actual, naive))

# signed gap at a holdout month: positive means the forecast came in low
print("approximation error: %.4f %%" % approximation_pct_error(100.0, 120.0))
