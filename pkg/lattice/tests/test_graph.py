from itertools import product

import numpy as np
from django.test import SimpleTestCase

from lattice.bounds import upper_bound

from lattice.exceptions import DisconnectedGraphError, EmptyFaceError, InvalidParameterError
from lattice.geometry import LatticePolytope, convex_hull, min_face
from lattice.graph import all_distances, bfs_distances, diameter, distance, distance_to_face, polytope_graph
from lattice.suites import random_polytope
from lattice.zonotopes import primitive_generators, zonotope_vertices


class DiameterTests(SimpleTestCase):
    def test_cube_diameter_is_dimension(self):
        for d in (1, 2, 3, 4):
            polytope = convex_hull(list(product((0, 1), repeat=d)), d, k=1)
            value, witness = diameter(polytope)
            self.assertEqual(value, d)
            self.assertEqual(witness, (0, len(polytope.vertices) - 1))

    def test_octagon(self):
        octagon = zonotope_vertices(primitive_generators(2, 2))
        self.assertEqual(diameter(octagon), (4, (0, 7)))

    def test_single_vertex(self):
        point = convex_hull([(1, 1)], 2, k=1, embed=True)
        self.assertEqual(diameter(point), (0, (0, 0)))

    def test_simplex(self):
        simplex = convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)], 3, k=1)
        self.assertEqual(diameter(simplex)[0], 1)


class DistanceTests(SimpleTestCase):
    def setUp(self):
        self.square = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)], 2, k=1)

    def test_bfs_table(self):
        table = bfs_distances(self.square, 0)
        self.assertEqual(table.dist, (0, 1, 1, 2))
        self.assertEqual(table.farthest(), (2, 3))

    def test_distance_is_symmetric(self):
        for table in all_distances(self.square):
            for v, value in enumerate(table.dist):
                self.assertEqual(distance(self.square, v, table.source), value)

    def test_distance_to_face(self):
        self.assertEqual(distance_to_face(self.square, 3, (0, 1)), 1)
        self.assertEqual(distance_to_face(self.square, 0, (0,)), 0)
        with self.assertRaises(EmptyFaceError):
            distance_to_face(self.square, 0, ())

    def test_bad_source(self):
        with self.assertRaises(InvalidParameterError):
            bfs_distances(self.square, 4)

    def test_disconnected_graph(self):
        broken = LatticePolytope(d=2, k=1, vertices=self.square.vertices, facets=self.square.facets, edges=((0, 1),), dim=2)
        with self.assertRaises(DisconnectedGraphError):
            bfs_distances(broken, 0)

    def test_graph_shape(self):
        graph = polytope_graph(self.square)
        self.assertEqual(graph.number_of_nodes(), 4)
        self.assertEqual(graph.number_of_edges(), 4)


class RandomPolytopeDistanceTests(SimpleTestCase):
    def setUp(self):
        rng = np.random.default_rng(31)
        self.polytopes = [random_polytope(rng) for _ in range(40)]

    def test_triangle_inequality(self):
        for polytope in self.polytopes:
            tables = all_distances(polytope)
            n = len(polytope.vertices)
            for a, b, c in product(range(n), repeat=3):
                self.assertLessEqual(tables[a].dist[c], tables[a].dist[b] + tables[b].dist[c])

    def test_distance_to_lowest_face(self):
        for polytope in self.polytopes:
            for j in range(polytope.d):
                unit = tuple(int(i == j) for i in range(polytope.d))
                low, face = min_face(polytope, unit)
                for x, vertex in enumerate(polytope.vertices):
                    self.assertLessEqual(distance_to_face(polytope, x, face), vertex[j] - low)

    def test_diameter_within_the_upper_bound(self):
        zonotopes = [zonotope_vertices(primitive_generators(d, 2)) for d in (2, 3)]
        for polytope in self.polytopes + zonotopes:
            self.assertLessEqual(diameter(polytope)[0], upper_bound(polytope.d, polytope.k)[0])

    def test_witness_is_the_first_pair_at_maximum_distance(self):
        for polytope in self.polytopes:
            value, witness = diameter(polytope)
            tables = all_distances(polytope)
            pairs = [(t.source, v) for t in tables for v in range(t.source + 1, len(t.dist)) if t.dist[v] == value]
            self.assertEqual(witness, pairs[0])
