import logging
from concurrent.futures import ThreadPoolExecutor

from django.core.management.base import BaseCommand

from cli.config import RunConfig, run_config_from_options
from cli.output import render_csv, render_json
from cli.plotting import render_plot_svg
from cli.runners import runner_for
from crosspoly import GammaCache

from ._common import apply_verbosity, command_error

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = "Compute upper bounds on the packing density of the cross-polytope."

    def add_arguments(self, parser):
        parser.add_argument("--method", choices=["insphere", "blichfeldt"], default="blichfeldt")
        parser.add_argument("--gauge", choices=["f0", "fstar", "levenshtein", "kl-asymptotic"])
        parser.add_argument("--n", required=True, help='dimensions: "24", "7..36" or "40,100,200"')
        parser.add_argument("--body", default="cross-polytope", help="cross-polytope, 120-cell or 600-cell")
        parser.add_argument("--format", choices=["csv", "json", "svg"], default="csv")
        parser.add_argument("--output", help="write to this file instead of stdout")
        parser.add_argument("--workers", type=int, help="parallel dimensions (default: settings.WORKERS)")
        parser.add_argument("--cache", dest="cache_path", help="gamma cache file")
        parser.add_argument("--no-cache", action="store_true", help="neither read nor write the gamma cache")
        parser.add_argument("--ball-table", help="CSV of ball density bounds (n,delta_upper,source,rigor)")
        parser.add_argument("--phi-points", type=int, help="φ grid size for the levenshtein/kl-asymptotic gauges")
        parser.add_argument("--k-max", type=int, help="largest Jacobi degree for the levenshtein gauge")
        parser.add_argument("--panel-count", type=int)
        parser.add_argument("--nodes-per-panel", type=int)
        parser.add_argument("--cutoff-tolerance", type=float)
        parser.add_argument("--grid-points", type=int)
        parser.add_argument("--refine-tol", type=float)

    def handle(self, *args, **options):
        apply_verbosity(options["verbosity"])
        try:
            config = run_config_from_options(options)
            reports = self.compute(config)
        except Exception as error:
            raise command_error(error) from error

        if config.output_format == "json":
            content = render_json(reports)
        elif config.output_format == "svg":
            content = render_plot_svg(reports)
        else:
            content = render_csv(reports)

        if config.output is None:
            self.stdout.write(content, ending="")
        else:
            config.output.parent.mkdir(parents=True, exist_ok=True)
            config.output.write_text(content, encoding="utf-8")
            logger.info("Wrote %d reports to %s", len(reports), config.output)

    def compute(self, config: RunConfig):
        cache = GammaCache.load(config.cache_path) if config.cache_path else None
        runner = runner_for(config, cache)
        workers = min(config.workers, len(config.dimensions))
        logger.info("Running %s for %d dimensions on %d workers", config.label, len(config.dimensions), workers)
        try:
            if workers == 1:
                results = {n: runner.run(n) for n in config.dimensions}
            else:
                with ThreadPoolExecutor(max_workers=workers) as executor:
                    futures = {n: executor.submit(runner.run, n) for n in config.dimensions}
                    results = {n: future.result() for n, future in futures.items()}
        finally:
            if cache is not None:
                cache.save()
        return [results[n] for n in sorted(results)]
