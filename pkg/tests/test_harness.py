import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from generators import household_like
from loadcast import __version__
from loadcast.cli import main
from loadcast.evaluation import approximation_pct_error
from loadcast.harness import (
    DataError,
    Dataset,
    RunConfig,
    emit_plot_data,
    emit_report,
    load_csv,
    run_comparison,
)
from loadcast.series import MonthKey, TariffPeriod


def write_house(path, n=26, seed=0, columns=("total", "day", "peak", "night")):
    tot = household_like(n, seed)
    parts = {"total": tot, "day": 0.5 * tot, "peak": 0.2 * tot + 3, "night": 0.3 * tot - 3}
    with open(path, "w") as fh:
        fh.write("date," + ",".join(columns) + "\n")
        for i in range(n):
            m = MonthKey(2014, 5).shift(i)
            fh.write(f"{m}," + ",".join(f"{parts[c][i]:.3f}" for c in columns) + "\n")
    return path


class TestLoadCsv:
    def test_two_rows(self, tmp_path):
        p = tmp_path / "h.csv"
        p.write_text("date,total\n2014-05,100\n2014-06,110\n")
        data = load_csv(p)
        s = data.households["h"][TariffPeriod.TOTAL]
        assert s.start == MonthKey(2014, 5) and list(s.values) == [100, 110]

    def test_crlf_and_bom(self, tmp_path):
        p = tmp_path / "h.csv"
        p.write_bytes(b"\xef\xbb\xbfdate,total\r\n2014-05,1.5\r\n2014-06,2\r\n")
        assert len(load_csv(p).households["h"][TariffPeriod.TOTAL]) == 2

    @pytest.mark.parametrize(
        "body, message",
        [
            ("date,total\n2014-05,1\n2014-07,2\n", "gap at 2014-06"),
            ("date,total\n2014-05,1\n2014-05,2\n", "duplicate"),
            ("date,total\n2014-05,1\n2014-06,-3\n", "row 3"),
            ("date,total\n2014-05,abc\n", "non-numeric"),
            ("date,day\n2014-05,1\n", "missing required column 'total'"),
            ("date,total\n", "no data rows"),
        ],
    )
    def test_errors(self, tmp_path, body, message):
        p = tmp_path / "h.csv"
        p.write_text(body)
        with pytest.raises(DataError, match=message):
            load_csv(p)

    def test_column_selection(self, tmp_path):
        p = write_house(tmp_path / "h.csv", n=4)
        periods = set(load_csv(p, ["total", "peak"]).households["h"])
        assert periods == {TariffPeriod.TOTAL, TariffPeriod.PEAK}

    def test_duplicate_household(self, tmp_path):
        p = write_house(tmp_path / "h.csv", n=4)
        with pytest.raises(DataError):
            load_csv(p).merge(load_csv(p))


@pytest.fixture(scope="module")
def report_pair(tmp_path_factory):
    d = tmp_path_factory.mktemp("in")
    data = load_csv(write_house(d / "house1.csv", seed=1)).merge(
        load_csv(write_house(d / "house2.csv", seed=2, columns=("total",)))
    )
    cfg = RunConfig(holdout=1, horizon=3)
    return cfg, run_comparison(cfg, data)


class TestComparison:
    def test_single_total_cell(self, tmp_path):
        data = load_csv(write_house(tmp_path / "solo.csv", columns=("total",)))
        report = run_comparison(RunConfig(), data)
        assert len(report.cells) == 1
        assert set(report.cells[0].results) == set(range(1, 20))

    def test_seasonality_filter(self, tmp_path):
        data = load_csv(write_house(tmp_path / "solo.csv", columns=("total",)))
        report = run_comparison(RunConfig(seasonality="12"), data)
        assert all(r.spec.s == 12 for r in report.cells[0].results.values())

    def test_empty_dataset(self):
        with pytest.raises(DataError):
            run_comparison(RunConfig(), Dataset())

    def test_two_stages(self, report_pair):
        _, report = report_pair
        assert len(report.cells) == 5
        for cell in report.cells:
            assert cell.results[cell.validation_best].spec.s == 12
            assert cell.forecast_best in cell.results

    def test_validation_rows_recompute(self, report_pair):
        _, report = report_pair
        for cell in report.cells:
            (row,) = cell.validation
            assert row.actual == cell.series.values[-1]
            assert row.ape_pct == pytest.approx(approximation_pct_error(row.actual, row.forecast), abs=1e-9)


class TestEmission:
    def test_csv_and_json_agree(self, report_pair, tmp_path):
        cfg, report = report_pair
        emit_report(report, tmp_path)
        for name in ("errors_all", "best_models", "validation", "forecasts"):
            rows_json = json.loads((tmp_path / f"{name}.json").read_text())
            with open(tmp_path / f"{name}.csv", newline="") as fh:
                rows_csv = list(csv.DictReader(fh))
            assert len(rows_json) == len(rows_csv)
            for a, b in zip(rows_json, rows_csv):
                for key, value in a.items():
                    if isinstance(value, float):
                        assert float(b[key]) == value
                    elif value is None:
                        assert b[key] == ""
                    else:
                        assert b[key] == str(value)

    def test_every_approach_once_per_cell(self, report_pair, tmp_path):
        _, report = report_pair
        emit_report(report, tmp_path, formats=("json",))
        rows = json.loads((tmp_path / "errors_all.json").read_text())
        keys = [(r["household"], r["period"], r["approach"]) for r in rows]
        assert len(keys) == len(set(keys)) == 19 * len(report.cells)

    def test_forecast_table_shape(self, report_pair, tmp_path):
        _, report = report_pair
        emit_report(report, tmp_path, formats=("json",))
        rows = json.loads((tmp_path / "forecasts.json").read_text())
        assert len(rows) == len(report.cells)
        for row in rows:
            assert row["first_month"] == "2016-07"
            hs = [row[f"h{i}"] for i in (1, 2, 3)]
            assert row["mean_forecast"] == pytest.approx(np.mean(hs), abs=1e-3)

    def test_plot_data(self, report_pair, tmp_path):
        cfg, report = report_pair
        files = emit_plot_data(report, tmp_path)
        assert len(files) == len(report.cells) + 1
        with open(files[0], newline="") as fh:
            rows = list(csv.DictReader(fh))
        n = len(report.cells[0].series)
        assert len(rows) == n + cfg.horizon
        assert sum(r["fitted"] != "" for r in rows) <= n - cfg.holdout
        assert sum(r["validation_forecast"] != "" for r in rows) == 1
        assert sum(r["forecast"] != "" for r in rows) == cfg.horizon

    def test_unwritable_directory(self, report_pair, tmp_path):
        _, report = report_pair
        blocker = tmp_path / "file"
        blocker.write_text("x")
        with pytest.raises(OSError):
            emit_report(report, blocker / "sub")


class TestCli:
    def test_compare(self, tmp_path, capsys):
        src = write_house(tmp_path / "h.csv", columns=("total", "day"))
        out = tmp_path / "out"
        code = main(["compare", "--input", str(src), "--out", str(out), "--format", "csv"])
        assert code == 0
        assert (out / "errors_all.csv").exists() and (out / "plots" / "h_total.csv").exists()
        assert not (out / "errors_all.json").exists()

    def test_validate_view(self, tmp_path):
        src = write_house(tmp_path / "h.csv", columns=("total",))
        out = tmp_path / "out"
        assert main(["validate", "--input", str(src), "--out", str(out), "--seasonality", "12"]) == 0
        assert (out / "validation.json").exists() and not (out / "forecasts.json").exists()

    def test_bad_input(self, tmp_path, capsys):
        p = tmp_path / "bad.csv"
        p.write_text("date,total\n2014-05,1\n2014-07,2\n")
        assert main(["compare", "--input", str(p), "--out", str(tmp_path)]) != 0
        assert "gap at 2014-06" in capsys.readouterr().err
        assert main(["forecast", "--input", str(tmp_path / "missing.csv")]) != 0

    def test_version_and_help(self):
        run = subprocess.run([sys.executable, "-m", "loadcast", "--version"], capture_output=True, text=True)
        assert run.returncode == 0 and __version__ in run.stdout
        run = subprocess.run([sys.executable, "-m", "loadcast", "--help"], capture_output=True, text=True)
        assert run.returncode == 0 and "compare" in run.stdout
        run = subprocess.run([sys.executable, "-m", "loadcast", "compare"], capture_output=True, text=True)
        assert run.returncode != 0
