from django.conf import settings
from django.core.management.base import BaseCommand

from cli.balltable import install_ball_table, read_ball_table

from ._common import apply_verbosity, command_error


class Command(BaseCommand):
    help = "Validate a ball density table (n,delta_upper,source,rigor) and optionally install it."

    def add_arguments(self, parser):
        parser.add_argument("path")
        parser.add_argument(
            "--install",
            action="store_true",
            help="copy the table to settings.BALL_TABLE_PATH for later runs",
        )

    def handle(self, *args, **options):
        apply_verbosity(options["verbosity"])
        try:
            records = read_ball_table(options["path"])
            if options["install"]:
                install_ball_table(options["path"], settings.BALL_TABLE_PATH)
        except Exception as error:
            raise command_error(error) from error
        self.stdout.write(f"{len(records)} records")
