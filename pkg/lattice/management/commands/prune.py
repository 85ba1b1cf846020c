from django.conf import settings
from django.core.management.base import CommandError

from lattice.exceptions import FormatError
from lattice.formats import append_resume, certificates_text, read_resume
from lattice.management.base import EXIT_BUDGET, EXIT_USAGE, LatticeCommand
from lattice.search import Outcome, pruned_search


class Command(LatticeCommand):
    help = 'Pruned search for a lattice (d,k)-polytope of diameter at least the target'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--dim', type=int, required=True)
        parser.add_argument('--k', type=int, required=True)
        parser.add_argument('--target', type=int, required=True)
        parser.add_argument('--budget', type=float, default=None, help='seconds')
        parser.add_argument('--nodes', type=int, default=None, help='node limit')
        parser.add_argument('--store', help='certificate store for a found polytope')
        parser.add_argument('--resume', help='file of evaluated digests for this d, k and target, read at start and extended at the end')

    def handle(self, *args, **options):
        d, k, target = options['dim'], options['k'], options['target']
        resume = options['resume']
        try:
            seen = read_resume(resume, d, k, target) if resume else set()
        except FormatError as exc:
            raise CommandError(f'{resume}: {exc}', returncode=EXIT_USAGE) from exc
        before = set(seen)
        outcome = pruned_search(
            d,
            k,
            target,
            node_budget=options['nodes'] or settings.LATDIAM_NODE_BUDGET,
            time_budget=options['budget'] or settings.LATDIAM_BUDGET_SECONDS,
            seen=seen,
        )
        if resume:
            append_resume(resume, d, k, target, sorted(seen - before))

        lines = [f'{outcome.status} {outcome.summary()}']
        lines.extend(f'assumes: {a}' for a in outcome.assumptions)
        text = '\n'.join(lines) + '\n'
        if outcome.certificate is not None:
            store = self.store_path(options, f'prune-d{d}-k{k}-t{target}.txt')
            if store:
                store.write_text(certificates_text([outcome.certificate]))
            else:
                text += certificates_text([outcome.certificate])
        self.emit(text, options)
        if outcome.status is Outcome.BUDGET_EXCEEDED:
            raise CommandError(outcome.summary(), returncode=EXIT_BUDGET)
