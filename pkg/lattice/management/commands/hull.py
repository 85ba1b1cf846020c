from lattice.formats import parse_points, polytope_text
from lattice.geometry import convex_hull
from lattice.management.base import LatticeCommand


class Command(LatticeCommand):
    help = 'Convex hull of a point file, written as a polytope file'
    reads_input = True

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--embed', action='store_true', help='accept lower-dimensional point sets')

    def handle(self, *args, **options):
        d, k, points = parse_points(self.read_input(options))
        polytope = convex_hull(points, d, k=k, embed=options['embed'])
        self.emit(polytope_text(polytope), options)
