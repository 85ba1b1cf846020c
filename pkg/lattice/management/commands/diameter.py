from lattice.formats import read_polytope
from lattice.graph import diameter
from lattice.management.base import LatticeCommand


class Command(LatticeCommand):
    help = 'Graph diameter of a polytope file, followed by the two witness vertices'
    reads_input = True

    def handle(self, *args, **options):
        polytope = read_polytope(self.read_input(options), embed=True)
        value, (u, v) = diameter(polytope)
        lines = [str(value)] + [' '.join(str(c) for c in polytope.vertices[i]) for i in (u, v)]
        self.emit('\n'.join(lines) + '\n', options)
