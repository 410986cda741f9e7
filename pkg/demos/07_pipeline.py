"""
End to end: CSV in, report tables out
=====================================

"""

import tempfile
from pathlib import Path

import numpy as np
from loadcast import RunConfig, emit_plot_data, emit_report, load_csv, run_comparison

# write a household file with total and day-tariff columns
work = Path(tempfile.mkdtemp())
rng = np.random.default_rng(3)
rows = ["date,total,day"]
for i in range(25):
    year, month = divmod(4 + i, 12)
    total = 380 + 70 * np.cos(2 * np.pi * i / 12) + rng.normal(0, 15)
    rows.append("%d-%02d,%.2f,%.2f" % (2014 + year, month + 1, total, 0.55 * total))
(work / "house1.csv").write_text("\n".join(rows) + "\n")

# stage 1 validates s=12 models on the holdout month, stage 2 ranks all of them
cfg = RunConfig(holdout=1, horizon=3)
report = run_comparison(cfg, load_csv(work / "house1.csv"))
for cell in report.cells:
    v = cell.validation[0]
    print(cell.household, cell.period.column, "validation best", cell.validation_best,
          "error %.4f %%" % v.ape_pct, "| forecast best", cell.forecast_best)

files = emit_report(report, work / "report") + emit_plot_data(report, work / "report")
print("\n".join(str(p.relative_to(work)) for p in files))
print((work / "report" / "forecasts.csv").read_text())

# the same run from the shell:
#   loadcast compare --input house1.csv --out report
