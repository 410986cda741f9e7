"""Monthly household electricity consumption forecasting.

Nineteen classical approaches (decomposition, seasonal-dummy regression,
exponential smoothing, seasonal ARIMA), MAPE/MAD/MSD scoring, rank-sum model
selection, holdout validation and multi-month forecasts.
"""

__version__ = "0.1.0"

from .catalog import ApproachResult, ApproachSpec, catalog_list, run_approach
from .evaluation import ErrorTriple, approximation_pct_error, mad, mape, msd, rank_models
from .harness import Dataset, RunConfig, emit_plot_data, emit_report, load_csv, run_comparison
from .series import MonthKey, MonthlySeries, TariffPeriod, aggregate_quarterly, split_holdout

__all__ = [
    "ApproachResult",
    "ApproachSpec",
    "Dataset",
    "ErrorTriple",
    "MonthKey",
    "MonthlySeries",
    "RunConfig",
    "TariffPeriod",
    "aggregate_quarterly",
    "approximation_pct_error",
    "catalog_list",
    "emit_plot_data",
    "emit_report",
    "load_csv",
    "mad",
    "mape",
    "msd",
    "rank_models",
    "run_approach",
    "run_comparison",
    "split_holdout",
]
