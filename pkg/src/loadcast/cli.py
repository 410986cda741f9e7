"""Command-line entry point: ``loadcast compare|validate|forecast``."""

from __future__ import annotations

import argparse
import logging
import sys
from functools import reduce

from . import __version__
from .harness import RunConfig, emit_plot_data, emit_report, load_csv, run_comparison

VIEWS = {
    "compare": dict(tables=("errors_all", "best_models", "validation", "forecasts"),
                    stages=("validation", "forecast"), plots=True),
    "validate": dict(tables=("errors_all", "best_models", "validation"), stages=("validation",), plots=False),
    "forecast": dict(tables=("errors_all", "best_models", "forecasts"), stages=("forecast",), plots=True),
}


def _csv_list(text: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in text.split(",") if part.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loadcast",
        description="Compare nineteen forecasting approaches on monthly household consumption.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "compare": "run all approaches, validate on the holdout and forecast ahead",
        "validate": "only the holdout validation tables",
        "forecast": "only the horizon forecast tables and plot data",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text, description=text)
        p.add_argument("--input", nargs="+", required=True, metavar="CSV",
                       help="one file per household: date,total[,day,peak,night]")
        p.add_argument("--columns", type=_csv_list, default=None,
                       help="periods to analyze, e.g. total,day,peak,night (default: all present)")
        p.add_argument("--holdout", type=int, default=1, help="months withheld for validation (default 1)")
        p.add_argument("--horizon", type=int, default=3, help="months forecast past the data (default 3)")
        p.add_argument("--seasonality", choices=("12", "4", "both"), default="both")
        p.add_argument("--sarima-seasonality", type=int, choices=(12, 4), default=12,
                       help="seasonal period for approach 19 (default 12)")
        p.add_argument("--out", default="report", help="output directory")
        p.add_argument("--format", type=_csv_list, default=("json", "csv"), help="json,csv")
        p.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    view = VIEWS[args.command]
    try:
        cfg = RunConfig(
            inputs=tuple(args.input),
            columns=args.columns,
            holdout=args.holdout,
            horizon=args.horizon,
            seasonality=args.seasonality,
            out_dir=args.out,
            formats=tuple(args.format),
            sarima_s=args.sarima_seasonality,
        )
        data = reduce(lambda a, b: a.merge(b), (load_csv(p, cfg.columns) for p in cfg.inputs))
        report = run_comparison(cfg, data)
        written = emit_report(report, cfg.out_dir, cfg.formats, view["tables"], view["stages"])
        if view["plots"]:
            written += emit_plot_data(report, cfg.out_dir)
    except (OSError, ValueError) as exc:
        print(f"loadcast: error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
