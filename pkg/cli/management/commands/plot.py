from django.core.management.base import BaseCommand, CommandError

from cli.output import read_reports
from cli.plotting import render_plot_svg

from ._common import EXIT_INVALID, apply_verbosity, command_error


class Command(BaseCommand):
    help = "Render bound CSV files as an SVG scatter plot of bound against n."

    def add_arguments(self, parser):
        parser.add_argument("files", nargs="+", help="CSV files written by the bound command")
        parser.add_argument("--log-scale", action="store_true", help="log10 y axis")
        parser.add_argument("--lines", action="store_true", help="join each series with a polyline")
        parser.add_argument("--output", help="write to this file instead of stdout")

    def handle(self, *args, **options):
        apply_verbosity(options["verbosity"])
        try:
            reports = [report for path in options["files"] for report in read_reports(path)]
        except Exception as error:
            raise command_error(error) from error
        if not reports:
            raise CommandError("no reports to plot", returncode=EXIT_INVALID)

        svg = render_plot_svg(reports, log_scale=options["log_scale"], lines=options["lines"])
        if options["output"]:
            with open(options["output"], "w", encoding="utf-8") as handle:
                handle.write(svg)
        else:
            self.stdout.write(svg, ending="")
