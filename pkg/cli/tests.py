import json
import math
import os
import tempfile
from io import StringIO
from pathlib import Path
from unittest import mock, skipUnless

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from bounds import BoundReport, Method, Rigor
from bounds.tests import TABLE_FSTAR
from cli.balltable import LEECH, BallTable, BallTableError, read_ball_table
from cli.output import CSV_FIELDS, parse_csv, render_csv
from cli.plotting import render_plot_svg
from cli.serializers import BallDensityRecordSerializer, RunConfigSerializer
from crossbound.utils import format_log_scientific, parse_dimensions
from numerics import DomainError, InfeasibleGaugeError, QuadratureError, Sign


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        directory = tempfile.TemporaryDirectory()
        self.addCleanup(directory.cleanup)
        self.tmp = Path(directory.name)
        overrides = override_settings(
            GAMMA_CACHE_DIR=self.tmp / "cache",
            BALL_TABLE_PATH=self.tmp / "cache" / "ball_table.csv",
            WORKERS=2,
        )
        overrides.enable()
        self.addCleanup(overrides.disable)

    def call(self, *args, **kwargs) -> str:
        out = StringIO()
        call_command(*args, stdout=out, **kwargs)
        return out.getvalue()

    def write(self, name: str, text: str) -> Path:
        path = self.tmp / name
        path.write_text(text)
        return path


class BoundCommandTests(CommandTestCase):
    def test_fstar_table(self):
        output = self.call("bound", "--method", "blichfeldt", "--gauge", "fstar", "--n", "7..36", "--format", "csv")
        lines = output.splitlines()
        self.assertEqual(lines[0], ",".join(CSV_FIELDS))
        reports = parse_csv(output)
        self.assertEqual([report.n for report in reports], list(range(7, 37)))
        for report in reports:
            self.assertAlmostEqual(report.bound, TABLE_FSTAR[report.n], delta=2e-4)

    def test_insphere_leech_dimension(self):
        output = self.call("bound", "--method", "insphere", "--n", "24")
        (report,) = parse_csv(output)
        self.assertEqual(report.method, Method.INSPHERE)
        self.assertAlmostEqual(report.bound, 0.98753, delta=1e-5)
        self.assertEqual(report.rigor, Rigor.RIGOROUS)

    def test_dimension_zero(self):
        with self.assertRaisesMessage(CommandError, "dimension must be ≥ 1") as caught:
            self.call("bound", "--method", "blichfeldt", "--gauge", "fstar", "--n", "0")
        self.assertEqual(caught.exception.returncode, 2)

    def test_insphere_needs_ball_table(self):
        with self.assertRaises(CommandError) as caught:
            self.call("bound", "--method", "insphere", "--n", "25")
        self.assertEqual(caught.exception.returncode, 2)

    def test_unreadable_ball_table(self):
        with self.assertRaises(CommandError) as caught:
            self.call("bound", "--method", "insphere", "--n", "25", "--ball-table", str(self.tmp / "missing.csv"))
        self.assertEqual(caught.exception.returncode, 2)

    def test_ball_table_without_the_dimension(self):
        table = self.write("balls.csv", "30,0.0001,somewhere,rigorous\n")
        with self.assertRaisesMessage(CommandError, "no ball density bound for n=25") as caught:
            self.call("bound", "--method", "insphere", "--n", "25", "--ball-table", str(table))
        self.assertEqual(caught.exception.returncode, 2)

    def test_regular_four_polytope(self):
        table = self.write("balls.csv", f"4,{0.13126 * math.pi**2 / 2!r},cohn-elkies,rigorous\n")
        output = self.call("bound", "--method", "insphere", "--n", "4", "--body", "120-cell", "--ball-table", str(table))
        (report,) = parse_csv(output)
        self.assertAlmostEqual(report.bound, 0.74972, delta=1e-4)

    def test_heuristic_gauge_is_flagged(self):
        output = self.call("bound", "--gauge", "kl-asymptotic", "--n", "40", "--phi-points", "4")
        (report,) = parse_csv(output)
        self.assertEqual(report.rigor, Rigor.HEURISTIC)
        self.assertEqual(report.gauge, "kl-asymptotic")

    def test_levenshtein_row(self):
        output = self.call("bound", "--gauge", "levenshtein", "--n", "8", "--phi-points", "8", "--format", "json")
        (row,) = json.loads(output)
        self.assertEqual(row["gauge"], "levenshtein")
        self.assertTrue(math.pi / 3 <= row["phi"] <= math.pi)

    def test_json_output(self):
        output = self.call("bound", "--gauge", "fstar", "--n", "7,24", "--format", "json")
        rows = json.loads(output)
        self.assertEqual([row["n"] for row in rows], [7, 24])
        self.assertEqual(set(rows[0]), set(CSV_FIELDS))

    def test_deterministic_and_cached(self):
        arguments = ("bound", "--gauge", "fstar", "--n", "10..14", "--workers", "3")
        first = self.call(*arguments)
        self.assertTrue((self.tmp / "cache" / "gamma_cache.csv").exists())
        second = self.call(*arguments)
        self.assertEqual(first, second)
        cold = self.call(*arguments, "--no-cache")
        self.assertEqual(first, cold)

    def test_output_file_and_svg(self):
        target = self.tmp / "out" / "plot.svg"
        self.call("bound", "--gauge", "f0", "--n", "7..9", "--format", "svg", "--output", str(target))
        svg = target.read_text()
        self.assertTrue(svg.startswith("<?xml"))
        self.assertEqual(svg.count("<circle"), 3)

    def test_exit_code_for_infeasible_gauge(self):
        runner = mock.Mock()
        runner.run.side_effect = InfeasibleGaugeError("no admissible degree", k_max=5)
        with mock.patch("cli.management.commands.bound.runner_for", return_value=runner):
            with self.assertRaises(CommandError) as caught:
                self.call("bound", "--gauge", "levenshtein", "--n", "9", "--workers", "1")
        self.assertEqual(caught.exception.returncode, 4)

    def test_exit_code_for_quadrature_failure(self):
        runner = mock.Mock()
        runner.run.side_effect = QuadratureError("no convergence", last_change=1e-3)
        with mock.patch("cli.management.commands.bound.runner_for", return_value=runner):
            with self.assertRaises(CommandError) as caught:
                self.call("bound", "--gauge", "fstar", "--n", "9", "--workers", "1")
        self.assertEqual(caught.exception.returncode, 3)


USER_BALL_TABLE = os.environ.get("CROSSBOUND_BALL_TABLE", "")

TABLE_INSPHERE = {
    24: 0.98753, 25: 0.95416, 26: 0.90259, 27: 0.85275, 28: 0.80476, 29: 0.75871, 30: 0.71466,
    31: 0.67265, 32: 0.63268, 33: 0.59472, 34: 0.55877, 35: 0.52476, 36: 0.49264,
}


@skipUnless(USER_BALL_TABLE and Path(USER_BALL_TABLE).exists(), "needs a Cohn-Elkies ball table")
class InsphereTableTests(CommandTestCase):
    def test_cohn_elkies_rows(self):
        output = self.call("bound", "--method", "insphere", "--n", "24..36", "--ball-table", USER_BALL_TABLE)
        for report in parse_csv(output):
            self.assertAlmostEqual(report.bound, TABLE_INSPHERE[report.n], delta=1e-4, msg=f"n={report.n}")


class IngestCommandTests(CommandTestCase):
    def test_single_record(self):
        path = self.write("balls.csv", "24,0.001929,cohn-kumar,rigorous\n")
        self.assertEqual(self.call("ingest", str(path)).strip(), "1 records")
        self.assertAlmostEqual(LEECH.delta_upper, 0.0019295743, delta=1e-10)

    def test_empty_file(self):
        path = self.write("empty.csv", "")
        self.assertEqual(self.call("ingest", str(path)).strip(), "0 records")

    def test_out_of_range_density(self):
        path = self.write("bad.csv", "n,delta_upper,source,rigor\n5,1.5,made-up,rigorous\n")
        with self.assertRaisesMessage(CommandError, "line 2") as caught:
            self.call("ingest", str(path))
        self.assertEqual(caught.exception.returncode, 2)

    def test_duplicate_source(self):
        path = self.write("dup.csv", "8,0.25,ce,rigorous\n8,0.26,ce,rigorous\n")
        with self.assertRaisesMessage(CommandError, "line 2: duplicate"):
            self.call("ingest", str(path))

    def test_malformed_line(self):
        path = self.write("short.csv", "8,0.25,ce\n")
        with self.assertRaisesMessage(CommandError, "line 1"):
            self.call("ingest", str(path))

    def test_install(self):
        path = self.write("balls.csv", "# Cohn-Elkies\n25,0.0017,ce,rigorous\n")
        self.call("ingest", str(path), "--install")
        installed = self.tmp / "cache" / "ball_table.csv"
        self.assertEqual(installed.read_text(), path.read_text())
        # the installed table is picked up without --ball-table
        output = self.call("bound", "--method", "insphere", "--n", "25")
        self.assertEqual(len(parse_csv(output)), 1)


class PlotCommandTests(CommandTestCase):
    def reports_file(self, name, reports):
        return self.write(name, render_csv(reports))

    def report(self, n, log_bound, method=Method.BLICHFELDT, gauge="fstar"):
        return BoundReport(n=n, method=method, log_bound=log_bound, rigor=Rigor.RIGOROUS, gauge=gauge)

    def test_two_series(self):
        blichfeldt = self.reports_file("b.csv", [self.report(n, -0.1 * n) for n in range(24, 30)])
        insphere = self.reports_file(
            "i.csv", [self.report(n, -0.05 * n, Method.INSPHERE, None) for n in range(24, 30)]
        )
        svg = self.call("plot", str(blichfeldt), str(insphere))
        self.assertEqual(svg.count("<circle"), 6)
        self.assertEqual(svg.count("<polygon"), 6)
        self.assertIn('width="800" height="500"', svg)
        self.assertIn("blichfeldt/fstar", svg)
        self.assertEqual(svg, self.call("plot", str(blichfeldt), str(insphere)))

    def test_single_point(self):
        path = self.reports_file("one.csv", [self.report(24, math.log(0.3))])
        svg = self.call("plot", str(path))
        self.assertEqual(svg.count("<circle"), 1)

    def test_log_scale_lines_descend(self):
        path = self.reports_file(
            "large.csv", [self.report(n, value) for n, value in ((40, -2.9), (100, -10.3), (1000, -132.0))]
        )
        svg = self.call("plot", str(path), "--log-scale", "--lines")
        points = svg.split('<polyline points="')[1].split('"')[0].split()
        heights = [float(point.split(",")[1]) for point in points]
        self.assertEqual(heights, sorted(heights))

    def test_empty_input(self):
        path = self.write("empty.csv", ",".join(CSV_FIELDS) + "\n")
        with self.assertRaises(CommandError) as caught:
            self.call("plot", str(path))
        self.assertEqual(caught.exception.returncode, 2)


class CacheCommandTests(CommandTestCase):
    def test_inspect_and_clear(self):
        self.call("bound", "--gauge", "fstar", "--n", "7")
        summary = json.loads(self.call("cache", "inspect"))
        self.assertEqual(summary["entries"], 7)
        self.assertEqual(self.call("cache", "clear").strip(), "cleared 7 entries")
        self.assertEqual(json.loads(self.call("cache", "inspect"))["entries"], 0)


class OutputTests(SimpleTestCase):
    def test_csv_round_trip(self):
        reports = [
            BoundReport(n=7, method=Method.BLICHFELDT, log_bound=-0.0019519, rigor=Rigor.RIGOROUS,
                        gauge="fstar", rho_star=0.2512, g_prime0=1.2e-16,
                        g_second0_sign=Sign.POSITIVE, g_prime_rn_sign=Sign.NEGATIVE),
            BoundReport(n=24, method=Method.INSPHERE, log_bound=-0.012548, rigor=Rigor.RIGOROUS),
            BoundReport(n=1000, method=Method.BLICHFELDT, log_bound=-131.7, rigor=Rigor.HEURISTIC,
                        gauge="kl-asymptotic", phi=math.pi / 3, rho_star=0.0243, g_prime0=-0.5,
                        g_second0_sign=Sign.INDETERMINATE, g_prime_rn_sign=Sign.NEGATIVE),
        ]
        self.assertEqual(parse_csv(render_csv(reports)), reports)

    def test_underflowing_bound_prints_from_log(self):
        self.assertEqual(format_log_scientific(math.log(6.36493e-58)), "6.36493e-58")
        self.assertEqual(format_log_scientific(-800 * math.log(10)), "1.00000e-800")
        self.assertEqual(format_log_scientific(0.0), "1.00000e+00")

    def test_clamped_bound_column(self):
        report = BoundReport(n=5, method=Method.BLICHFELDT, log_bound=0.02, rigor=Rigor.RIGOROUS, gauge="fstar")
        row = render_csv([report]).splitlines()[1].split(",")
        self.assertEqual(row[CSV_FIELDS.index("bound")], "1.00000e+00")
        self.assertEqual(float(row[CSV_FIELDS.index("log_bound")]), 0.02)

    def test_plot_is_deterministic(self):
        reports = [BoundReport(n=n, method=Method.INSPHERE, log_bound=-0.01 * n, rigor=Rigor.RIGOROUS) for n in (24, 30)]
        self.assertEqual(render_plot_svg(reports), render_plot_svg(list(reversed(reports))))


class ValidationTests(SimpleTestCase):
    def test_parse_dimensions(self):
        self.assertEqual(parse_dimensions("7..10"), [7, 8, 9, 10])
        self.assertEqual(parse_dimensions("40,100, 24"), [24, 40, 100])
        self.assertEqual(parse_dimensions("7..8,8,12"), [7, 8, 12])
        for bad in ("", "x", "9..7"):
            with self.assertRaises(DomainError):
                parse_dimensions(bad)

    def test_ball_record_serializer(self):
        valid = BallDensityRecordSerializer(data={"n": 24, "delta_upper": 0.0019, "source": "x", "rigor": "rigorous"})
        self.assertTrue(valid.is_valid())
        invalid = BallDensityRecordSerializer(data={"n": 24, "delta_upper": 0, "source": "x", "rigor": "maybe"})
        self.assertFalse(invalid.is_valid())
        self.assertEqual(set(invalid.errors), {"delta_upper", "rigor"})

    def test_run_config_rules(self):
        base = {
            "panel_count": 32, "nodes_per_panel": 20, "cutoff_tolerance": 1e-16,
            "grid_points": 2048, "refine_tol": 1e-12, "workers": 1,
        }
        self.assertFalse(RunConfigSerializer(data={**base, "n": "25", "method": "insphere"}).is_valid())
        self.assertTrue(RunConfigSerializer(data={**base, "n": "24", "method": "insphere"}).is_valid())
        self.assertFalse(RunConfigSerializer(data={**base, "n": "7", "method": "blichfeldt"}).is_valid())
        self.assertFalse(
            RunConfigSerializer(data={**base, "n": "7", "method": "insphere", "gauge": "fstar"}).is_valid()
        )

    def test_ball_table_lookup_prefers_smallest(self):
        table = BallTable([])
        self.assertIs(table.lookup(24), LEECH)
        self.assertIsNone(table.lookup(25))

    def test_missing_ball_table(self):
        with self.assertRaises(BallTableError):
            read_ball_table("/nonexistent/balls.csv")
