from django.conf import settings

from lattice.formats import polytope_text, read_generators
from lattice.management.base import LatticeCommand
from lattice.zonotopes import zonotope_vertices


class Command(LatticeCommand):
    help = 'Minkowski sum of the segments of a generator file, translated into the positive orthant'
    reads_input = True

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--max-generators', type=int, default=None)

    def handle(self, *args, **options):
        gens = read_generators(self.read_input(options))
        limit = options['max_generators'] or settings.LATDIAM_MAX_GENERATORS
        self.emit(polytope_text(zonotope_vertices(gens, max_generators=limit)), options)
