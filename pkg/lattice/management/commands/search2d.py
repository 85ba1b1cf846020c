from django.conf import settings

from lattice.formats import certificates_text
from lattice.management.base import LatticeCommand
from lattice.search import enumerate_max_diameter_2d


class Command(LatticeCommand):
    help = 'Exact largest diameter of a lattice (2,k)-polygon, with every maximizer up to symmetry'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--k', type=int, required=True)
        parser.add_argument('--strategy', choices=('subset', 'edges'), default=None)
        parser.add_argument('--store', help='certificate store to write the maximizers to')

    def handle(self, *args, **options):
        k = options['k']
        value, certificates = enumerate_max_diameter_2d(k, strategy=options['strategy'], node_budget=settings.LATDIAM_NODE_BUDGET)
        store = self.store_path(options, f'search2d-k{k}.txt')
        text = certificates_text(certificates)
        if store:
            store.write_text(text)
            self.stderr.write(self.style.SUCCESS(f'{len(certificates)} certificates written to {store}'))
            text = ''
        self.emit(f'{value}\n{text}', options)
