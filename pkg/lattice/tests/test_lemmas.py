from itertools import product

from django.test import SimpleTestCase

from lattice.exceptions import BoundsMismatchError, InvalidParameterError, PreconditionError
from lattice.geometry import convex_hull
from lattice.graph import bfs_distances, diameter
from lattice.lemmas import (
    IndexSet,
    PolygonPath,
    Status,
    check_box_restriction,
    check_facet_distance,
    check_inductive_step,
    check_pair_bound,
    check_polygon_path,
    check_theorem1_recursion,
    known_delta,
)
from lattice.search import _convex_subsets, _Budget
from lattice.suites import polygon_paths


def cube(d, k=1):
    return convex_hull(list(product((0, k), repeat=d)), d, k=k)


class FacetDistanceTests(SimpleTestCase):
    def test_cube(self):
        report = check_facet_distance(cube(3), 7, (1, 0, 0))
        self.assertEqual((report.lhs, report.rhs, report.status), (1, 1, Status.HOLDS))
        self.assertEqual(report.lemma, 'lemma1')

    def test_vertex_on_the_face(self):
        report = check_facet_distance(cube(3), 0, (1, 1, 1))
        self.assertEqual((report.lhs, report.rhs), (0, 0))
        self.assertEqual(report.detail['gamma'], 0)


class BoxRestrictionTests(SimpleTestCase):
    def test_cube(self):
        report = check_box_restriction(cube(3), IndexSet((0,)))
        self.assertEqual((report.lhs, report.rhs, report.status), (3, 3, Status.HOLDS))

    def test_all_coordinates(self):
        report = check_box_restriction(cube(2, k=2), IndexSet((0, 1)))
        self.assertEqual((report.lhs, report.rhs), (2, 4))
        self.assertEqual(known_delta(0, 5), 0)

    def test_declared_bounds_are_checked(self):
        with self.assertRaises(BoundsMismatchError):
            check_box_restriction(cube(3), IndexSet((0,), bounds=((0, 2),)))
        report = check_box_restriction(cube(3), IndexSet((0,), bounds=((0, 1),)))
        self.assertEqual(report.status, Status.HOLDS)

    def test_index_validation(self):
        with self.assertRaises(InvalidParameterError):
            IndexSet((0, 0))
        with self.assertRaises(InvalidParameterError):
            check_box_restriction(cube(2), IndexSet((2,)))

    def test_unknown_delta(self):
        polytope = convex_hull([(0, 0, 0, 0)] + [tuple(4 if i == j else 0 for j in range(4)) for i in range(4)], 4, k=4)
        report = check_box_restriction(polytope, IndexSet((0,)))
        self.assertEqual(report.status, Status.UNKNOWN)
        self.assertTrue(report.skipped)


class PairBoundTests(SimpleTestCase):
    def test_cube(self):
        report = check_pair_bound(cube(3), 0, 7, IndexSet((0,)))
        self.assertEqual((report.lhs, report.rhs, report.status), (3, 3, Status.HOLDS))
        self.assertFalse(report.detail['strict'])

    def test_strict_case(self):
        polytope = convex_hull([(1, 0), (0, 1), (1, 1)], 2, k=1)
        u, v = polytope.vertex_index[(0, 1)], polytope.vertex_index[(1, 0)]
        report = check_pair_bound(polytope, u, v, IndexSet((0, 1)))
        self.assertTrue(report.detail['strict'])
        self.assertEqual((report.lhs, report.rhs, report.status), (1, 2, Status.HOLDS))

    def test_preconditions(self):
        with self.assertRaises(PreconditionError):
            check_pair_bound(cube(3), 7, 7, IndexSet((0,)))
        with self.assertRaises(PreconditionError):
            check_pair_bound(cube(4), 0, 0, IndexSet((0, 1, 2, 3)))


class PolygonPathTests(SimpleTestCase):
    def test_equality_case(self):
        report = check_polygon_path(PolygonPath(((3, 3), (3, 2), (2, 1), (0, 0))))
        self.assertEqual((report.lhs, report.rhs, report.status), (5, 5, Status.HOLDS))

    def test_vacuous(self):
        report = check_polygon_path(PolygonPath(((1, 1), (1, 0), (0, 0))))
        self.assertEqual(report.status, Status.HOLDS)
        self.assertTrue(report.detail['vacuous'])

    def test_not_applicable(self):
        self.assertEqual(check_polygon_path(PolygonPath(((3, 3), (3, 1), (2, 1), (0, 0)))).status, Status.NOT_APPLICABLE)
        self.assertEqual(check_polygon_path(PolygonPath(((0, 0), (1, 0), (1, 1)))).status, Status.NOT_APPLICABLE)

    def test_every_small_polygon(self):
        for k in (2, 3):
            for subset in _convex_subsets(k, _Budget(10**6)):
                if (0, 0) not in subset:
                    continue
                for path in polygon_paths(convex_hull(subset, 2, k=k)):
                    self.assertNotEqual(check_polygon_path(path).status, Status.VIOLATED, path)


class InductiveStepTests(SimpleTestCase):
    def test_cube(self):
        polytope = cube(3, k=3)
        report = check_inductive_step(polytope, 0, 7)
        self.assertEqual(report.status, Status.HOLDS)
        self.assertEqual(report.lhs, 3)
        self.assertEqual(report.detail['sides'], [6, 5, 7])
        self.assertEqual(report.detail['holding'], ['i', 'ii', 'iii'])

    def test_side_conditions(self):
        self.assertEqual(check_inductive_step(cube(2, k=3), 0, 3).status, Status.NOT_APPLICABLE)
        self.assertEqual(check_inductive_step(cube(3, k=2), 0, 7).status, Status.NOT_APPLICABLE)
        simplex = convex_hull([(0,) * 5] + [tuple(4 if i == j else 0 for j in range(5)) for i in range(5)], 5, k=4)
        self.assertEqual(check_inductive_step(simplex, 0, 1).status, Status.UNKNOWN)

    def test_both_sides_recomputed(self):
        polytope = convex_hull([(0, 0, 1), (3, 1, 0), (1, 3, 3), (0, 3, 0), (3, 3, 2), (2, 0, 3)], 3, k=3)
        for u in range(len(polytope.vertices)):
            for v in range(u + 1, len(polytope.vertices)):
                report = check_inductive_step(polytope, u, v)
                self.assertEqual(report.lhs, bfs_distances(polytope, u).dist[v])
                self.assertLessEqual(report.lhs, diameter(polytope)[0])
                self.assertEqual(report.status, Status.HOLDS)


class RecursionTests(SimpleTestCase):
    def test_recursion_meets_closed_forms(self):
        for d, k in [(4, 3), (5, 3), (6, 3), (7, 3), (8, 3), (4, 4), (4, 5), (5, 6)]:
            report = check_theorem1_recursion(d, k)
            self.assertEqual(report.status, Status.HOLDS, (d, k))

    def test_four_three(self):
        report = check_theorem1_recursion(4, 3)
        self.assertEqual((report.lhs, report.rhs), (8, 8))

    def test_not_applicable(self):
        self.assertEqual(check_theorem1_recursion(3, 3).status, Status.NOT_APPLICABLE)
        self.assertEqual(check_theorem1_recursion(5, 2).status, Status.NOT_APPLICABLE)
