import sys
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from lattice.exceptions import BudgetExceededError, FormatError, LatticeError

EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class LatticeCommand(BaseCommand):
    """Shared file handling and error translation for the lattice subcommands.

    Input is read from a path argument or standard input, output goes to --output
    or standard output. Library errors become CommandError with the exit status
    of their kind.
    """

    stealth_options = ('stdin',)
    requires_system_checks = []
    reads_input = False

    def add_arguments(self, parser):
        if self.reads_input:
            parser.add_argument('input', nargs='?', default='-', help='input file, - for standard input')
        parser.add_argument('-o', '--output', help='write the result to this file instead of standard output')

    def execute(self, *args, **options):
        try:
            return super().execute(*args, **options)
        except BudgetExceededError as exc:
            raise CommandError(f'budget exceeded: {exc}', returncode=EXIT_BUDGET) from exc
        except FormatError as exc:
            raise CommandError(f'{self._source(options)}: {exc}', returncode=EXIT_USAGE) from exc
        except LatticeError as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE) from exc

    def _source(self, options):
        source = options.get('input', '-')
        return '<stdin>' if source == '-' else source

    def read_input(self, options):
        source = options.get('input', '-')
        if source == '-':
            stream = options.get('stdin') or sys.stdin
            return stream.read()
        try:
            return Path(source).read_text()
        except OSError as exc:
            raise CommandError(f'cannot read {source}: {exc.strerror}', returncode=EXIT_USAGE) from exc

    def emit(self, text, options):
        target = options.get('output')
        if target:
            try:
                Path(target).write_text(text)
            except OSError as exc:
                raise CommandError(f'cannot write {target}: {exc.strerror}', returncode=EXIT_USAGE) from exc
        else:
            self.stdout.write(text, ending='')

    def store_path(self, options, name):
        """Explicit --store, else a file under LATDIAM_STORE_DIR, else None."""
        if options.get('store'):
            return Path(options['store'])
        if settings.LATDIAM_STORE_DIR:
            return Path(settings.LATDIAM_STORE_DIR) / name
        return None
