import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from lattice.formats import certificates_text, read_polytope
from lattice.search import make_certificate

CUBE = '3 1\n' + ''.join(f'{x} {y} {z}\n' for x in (0, 1) for y in (0, 1) for z in (0, 1))


def run(*args, stdin=''):
    out, err = StringIO(), StringIO()
    call_command(*args, stdin=StringIO(stdin), stdout=out, stderr=err)
    return out.getvalue(), err.getvalue()


@override_settings(LATDIAM_STORE_DIR=None, LATDIAM_WORKERS=1)
class GeometryCommandTests(SimpleTestCase):
    def test_hull_is_idempotent(self):
        text = '2 2\n0 0\n2 0\n0 2\n2 2\n1 1\n1 0\n'
        hull, _ = run('hull', stdin=text)
        self.assertEqual(hull, '2 2\n0 0\n0 2\n2 0\n2 2\n')
        again, _ = run('hull', stdin=hull)
        self.assertEqual(again, hull)

    def test_cube_diameter(self):
        out, _ = run('diameter', stdin=CUBE)
        self.assertEqual(out, '3\n0 0 0\n1 1 1\n')

    def test_generators_zonotope_diameter(self):
        gens, _ = run('generators', '--dim', '2', '--p', '2')
        zonotope, _ = run('zonotope', stdin=gens)
        out, _ = run('diameter', stdin=zonotope)
        self.assertEqual(out.splitlines()[0], '4')

    def test_format_error_names_the_line(self):
        with self.assertRaises(CommandError) as caught:
            run('hull', stdin='2 1\n0 0\n0 1 1\n')
        self.assertEqual(caught.exception.returncode, 2)
        self.assertIn('line 3', str(caught.exception))
        self.assertIn('<stdin>', str(caught.exception))

    def test_files_in_and_out(self):
        with tempfile.TemporaryDirectory() as directory:
            source, target = Path(directory) / 'cube.txt', Path(directory) / 'hull.txt'
            source.write_text(CUBE)
            out, _ = run('hull', str(source), '-o', str(target))
            self.assertEqual(out, '')
            self.assertEqual(len(target.read_text().splitlines()), 9)
            with self.assertRaises(CommandError) as caught:
                run('hull', str(Path(directory) / 'missing.txt'))
            self.assertEqual(caught.exception.returncode, 2)


@override_settings(LATDIAM_STORE_DIR=None, LATDIAM_WORKERS=1)
class BoundsCommandTests(SimpleTestCase):
    def test_settled_cell(self):
        out, _ = run('bounds', '--dmax', '4', '--kmax', '3')
        records = {(r['d'], r['k']): r for r in json.loads(out)}
        self.assertEqual(records[(4, 3)]['exact'], 8)
        self.assertEqual(records[(4, 3)]['lower'], records[(4, 3)]['upper'])
        self.assertTrue(records[(4, 3)]['settled'])

    def test_open_cells_are_reported(self):
        out, err = run('bounds', '--dmax', '3', '--kmax', '4')
        record = next(r for r in json.loads(out) if (r['d'], r['k']) == (3, 4))
        self.assertEqual((record['lower'], record['upper']), (7, 8))
        self.assertIsNone(record['exact'])
        self.assertIn('7 <= delta(3,4) <= 8', err)

    def test_formulas(self):
        out, _ = run('bounds', '--dmax', '4', '--kmax', '3', '--formulas')
        rows = {(r['d'], r['k']): r for r in json.loads(out)}
        self.assertEqual(rows[(4, 3)]['formulas']['Theorem2ii'], 8)
        self.assertEqual(rows[(4, 3)]['exact'], 8)
        self.assertEqual(rows[(4, 3)]['recursion'], 8)
        self.assertTrue(rows[(4, 3)]['conjecture_compatible'])
        self.assertEqual(set(rows[(3, 2)]['formulas']), {'KleinschmidtOnn', 'DelPiaMichini', 'BoxLemma'})
        self.assertEqual(rows[(3, 2)]['formulas']['DelPiaMichini'], 4)
        self.assertEqual(rows[(3, 2)]['exact'], 4)
        self.assertIsNone(rows[(3, 2)]['recursion'])

    def test_limits(self):
        with self.assertRaises(CommandError) as caught:
            run('bounds', '--dmax', '51', '--kmax', '2')
        self.assertEqual(caught.exception.returncode, 2)


@override_settings(LATDIAM_STORE_DIR=None, LATDIAM_WORKERS=1)
class SearchCommandTests(SimpleTestCase):
    def test_search2d(self):
        out, _ = run('search2d', '--k', '3')
        self.assertEqual(out.splitlines()[0], '4')
        self.assertEqual(sum(1 for line in out.splitlines() if line.startswith('diameter')), 1)

    def test_store_and_verify(self):
        with tempfile.TemporaryDirectory() as directory:
            store = Path(directory) / 'k2.txt'
            out, err = run('search2d', '--k', '2', '--store', str(store))
            self.assertEqual(out, '3\n')
            self.assertIn('written to', err)
            out, _ = run('verify', '--certificates', str(store))
            self.assertRegex(out, r'^(\d+) of \1 certificates verified$')

    def test_tampered_store_fails(self):
        with tempfile.TemporaryDirectory() as directory:
            store = Path(directory) / 'bad.txt'
            store.write_text('diameter 5 digest ' + '0' * 64 + '\n2 1\n0 0\n0 1\n1 0\n1 1\n')
            with self.assertLogs('lattice.search', level='WARNING'), self.assertRaises(CommandError) as caught:
                run('verify', '--certificates', str(store))
            self.assertEqual(caught.exception.returncode, 1)

    def test_store_listing_non_vertices_fails(self):
        square = '2 2\n0 0\n0 2\n2 0\n2 2\n'
        with tempfile.TemporaryDirectory() as directory:
            store = Path(directory) / 'padded.txt'
            store.write_text(certificates_text([make_certificate(read_polytope(square))]))
            out, _ = run('verify', '--certificates', str(store))
            self.assertEqual(out, '1 of 1 certificates verified\n')
            header = store.read_text().splitlines()[0]
            store.write_text(f'{header}\n2 2\n0 0\n0 2\n1 1\n1 0\n2 0\n2 2\n')
            with self.assertLogs('lattice.search', level='WARNING'), self.assertRaises(CommandError) as caught:
                run('verify', '--certificates', str(store))
            self.assertEqual(caught.exception.returncode, 1)

    def test_prune_found(self):
        out, _ = run('prune', '--dim', '3', '--k', '3', '--target', '6')
        lines = out.splitlines()
        self.assertTrue(lines[0].startswith('found '))
        self.assertIn('diameter 6 digest', out)

    def test_prune_budget(self):
        with tempfile.TemporaryDirectory() as directory:
            resume = Path(directory) / 'seen.txt'
            with self.assertRaises(CommandError) as caught:
                run('prune', '--dim', '3', '--k', '6', '--target', '12', '--nodes', '50', '--resume', str(resume))
            self.assertEqual(caught.exception.returncode, 3)
            self.assertEqual(resume.read_text().splitlines()[1], '3 6 12')

    def test_prune_rejects_a_resume_file_of_another_search(self):
        with tempfile.TemporaryDirectory() as directory:
            resume = Path(directory) / 'seen.txt'
            resume.write_text('# d k target\n3 6 12\n' + '0' * 64 + '\n')
            with self.assertRaises(CommandError) as caught:
                run('prune', '--dim', '3', '--k', '6', '--target', '11', '--nodes', '50', '--resume', str(resume))
            self.assertEqual(caught.exception.returncode, 2)
            self.assertIn('seen.txt', str(caught.exception))

    def test_prune_beyond_the_bound(self):
        out, _ = run('prune', '--dim', '3', '--k', '1', '--target', '4')
        self.assertTrue(out.startswith('exhausted '))
        self.assertIn('assumes: no polytope exceeds the upper bound', out)


@override_settings(LATDIAM_STORE_DIR=None, LATDIAM_WORKERS=1)
class VerifyCommandTests(SimpleTestCase):
    def test_deterministic_summary(self):
        first, _ = run('verify', '--suite', 'lemma1', '--n', '20', '--seed', '4')
        second, _ = run('verify', '--suite', 'lemma1', '--n', '20', '--seed', '4')
        self.assertEqual(first, second)
        summary = json.loads(first)
        self.assertEqual((summary['suite'], summary['seed'], summary['instances']), ('lemma1', 4, 20))
        self.assertEqual(summary['violated'], 0)
        self.assertEqual(summary['violations'], [])

    def test_requires_a_mode(self):
        with self.assertRaises(CommandError) as caught:
            run('verify')
        self.assertEqual(caught.exception.returncode, 2)
