import json

from django.core.management.base import BaseCommand

from cli.config import default_cache_path
from crosspoly import GammaCache

from ._common import apply_verbosity


class Command(BaseCommand):
    help = "Inspect or clear the outer-angle cache."

    def add_arguments(self, parser):
        parser.add_argument("action", choices=["inspect", "clear"])
        parser.add_argument("--cache", dest="cache_path", help="gamma cache file (default: settings)")

    def handle(self, *args, **options):
        apply_verbosity(options["verbosity"])
        cache = GammaCache.load(options["cache_path"] or default_cache_path())
        if options["action"] == "clear":
            self.stdout.write(f"cleared {cache.clear()} entries")
        else:
            self.stdout.write(json.dumps(cache.summary(), indent=2, sort_keys=True))
