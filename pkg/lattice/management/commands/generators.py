from lattice.formats import generators_text
from lattice.management.base import LatticeCommand
from lattice.zonotopes import primitive_generators


class Command(LatticeCommand):
    help = 'Primitive generators of H1(d,p): vectors of 1-norm at most p with positive leading coordinate'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--dim', type=int, required=True)
        parser.add_argument('--p', type=int, required=True)

    def handle(self, *args, **options):
        self.emit(generators_text(primitive_generators(options['dim'], options['p'])), options)
