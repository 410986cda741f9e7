"""
Nineteen approaches and rank-sum selection
==========================================

"""

import numpy as np
from loadcast import MonthKey, MonthlySeries, catalog_list, rank_models, run_approach

# two years of synthetic household data
rng = np.random.default_rng(7)
t = np.arange(24)
kwh = MonthlySeries(MonthKey(2014, 5), 400 + 60 * np.cos(2 * np.pi * t / 12) + rng.normal(0, 20, 24))

# hold out the last month, forecast it plus three more
results = {}
for spec in catalog_list():
    r = run_approach(spec, kwh, holdout=1, horizon=3)
    results[spec.id] = r
    status = "ok" if r.ok else "skipped: " + r.reason
    print("%2d  %-52s s=%-2d %s" % (spec.id, spec.label, spec.s, status))

# each metric is ranked separately and the ranks are summed
ranking = rank_models({k: r.errors for k, r in results.items() if r.ok})
for aid in ranking.order[:5]:
    print(aid, ranking.ranks[aid], ranking.rank_sum[aid])
best = results[ranking.best]
print("best:", ranking.best, best.spec.label, np.round(best.horizon_forecast, 2))
