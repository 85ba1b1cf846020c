from django.conf import settings
from django.core.management.base import CommandError

from lattice.exceptions import FormatError
from lattice.formats import read_certificates
from lattice.management.base import EXIT_USAGE, EXIT_VIOLATION, LatticeCommand
from lattice.schemas import SuiteSummarySchema, dumps
from lattice.search import verify_record
from lattice.suites import SUITES, run_suite


class Command(LatticeCommand):
    help = 'Run a seeded randomized suite of checks, or re-verify a certificate store'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--suite', choices=SUITES)
        parser.add_argument('--n', type=int, default=100)
        parser.add_argument('--seed', type=int, default=None, help='defaults to LATDIAM_SEED')
        parser.add_argument('--workers', type=int, default=None)
        parser.add_argument('--certificates', help='certificate store to re-verify')

    def handle(self, *args, **options):
        if options['certificates']:
            return self.verify_store(options)
        if not options['suite']:
            raise CommandError('one of --suite or --certificates is required', returncode=EXIT_USAGE)
        seed = settings.LATDIAM_SEED if options['seed'] is None else options['seed']
        if seed < 0 or options['n'] < 0:
            raise CommandError('--seed and --n must be non-negative', returncode=EXIT_USAGE)
        result = run_suite(options['suite'], options['n'], seed, workers=options['workers'] or settings.LATDIAM_WORKERS)
        summary = {
            'suite': result.suite,
            'seed': result.seed,
            'instances': result.instances,
            'holds': result.holds,
            'violated': result.violated,
            'skipped': result.skipped,
            'violations': result.violations,
        }
        self.emit(dumps(SuiteSummarySchema(), summary), options)
        if result.violated:
            raise CommandError(f'{result.violated} violations in suite {result.suite}', returncode=EXIT_VIOLATION)
        return None

    def verify_store(self, options):
        path = options['certificates']
        try:
            with open(path) as handle:
                records = read_certificates(handle.read())
        except OSError as exc:
            raise CommandError(f'cannot read {path}: {exc.strerror}', returncode=EXIT_USAGE) from exc
        except FormatError as exc:
            raise CommandError(f'{path}: {exc}', returncode=EXIT_USAGE) from exc
        failures = sum(1 for record in records if not verify_record(record))
        self.emit(f'{len(records) - failures} of {len(records)} certificates verified\n', options)
        if failures:
            raise CommandError(f'{failures} certificates failed verification', returncode=EXIT_VIOLATION)
        return None
