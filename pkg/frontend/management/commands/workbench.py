import argparse
import sys

from django.core.management.base import BaseCommand, CommandError

from frontend.dispatch import dispatch


class Command(BaseCommand):
    help = "Runs a workbench verb; see `workbench --help` for the list"

    def add_arguments(self, parser):
        parser.add_argument("argv", nargs=argparse.REMAINDER, help="verb, files and flags")

    def run_from_argv(self, argv):
        # The verbs have their own parser, flags included
        sys.exit(dispatch(argv[2:], self.stdout, self.stderr))

    def handle(self, argv: list[str], *args, **options):
        code = dispatch(argv, self.stdout, self.stderr)
        if code:
            raise CommandError(f"workbench exited with status {code}", returncode=code)
