"""
Seeded randomized suites for the lemma checkers and for the structural properties
of hulls, edges and zonotopes.

Instance i of a suite draws from numpy.random.default_rng([seed, suite id, i]), so the
reports depend only on the seed and never on how the instances are spread over workers.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .exceptions import InvalidParameterError, LatticeError
from .geometry import affine_dimension, convex_hull, min_face
from .graph import diameter
from .lemmas import (
    IndexSet,
    LemmaReport,
    PolygonPath,
    Status,
    check_box_restriction,
    check_facet_distance,
    check_inductive_step,
    check_pair_bound,
    check_polygon_path,
    instance_digest,
)
from .zonotopes import GeneratorSet, generator_orbits, zonotope_stats, zonotope_vertices

logger = logging.getLogger(__name__)

SUITE_IDS = {'lemma1': 1, 'lemma2': 2, 'lemma3': 3, 'lemma4': 4, 'step': 5, 'structure': 6}
SUITES = tuple(SUITE_IDS)
LAW_MAX_GENERATORS = 10
LAW_DIMENSIONS = (2, 3, 4)
ORACLE_RADIUS = 2


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    seed: int
    instances: int
    reports: tuple

    def count(self, *statuses):
        return sum(1 for r in self.reports if r.status in statuses)

    @property
    def holds(self):
        return self.count(Status.HOLDS)

    @property
    def violated(self):
        return self.count(Status.VIOLATED)

    @property
    def skipped(self):
        return self.count(Status.NOT_APPLICABLE, Status.UNKNOWN)

    @property
    def violations(self):
        return [r for r in self.reports if r.status is Status.VIOLATED]


def random_polytope(rng, d=None, k=None):
    """Hull of 4..12 uniform points of {0..k}^d, redrawn until it is full-dimensional."""
    d = int(rng.integers(2, 4)) if d is None else d
    k = int(rng.integers(1, 4)) if k is None else k
    while True:
        count = int(rng.integers(4, 13))
        points = [tuple(int(c) for c in row) for row in rng.integers(0, k + 1, size=(count, d))]
        if affine_dimension(sorted(set(points))) == d:
            return convex_hull(points, d, k=k)
        logger.debug('discarding a flat sample of %d points in dimension %d', count, d)


def _cycle(polygon):
    """Vertex indices of a polygon in boundary order, starting at vertex 0."""
    order = [0]
    previous = None
    while True:
        current = order[-1]
        step = next(j for j in polygon.neighbours(current) if j != previous)
        if step == 0:
            return order
        previous = current
        order.append(step)


def polygon_paths(polygon):
    """Both labellings of the boundary that end at the origin, or nothing when it is not a vertex."""
    if (0, 0) not in polygon.vertex_index:
        return []
    cycle = _cycle(polygon)
    start = cycle.index(polygon.vertex_index[(0, 0)])
    forward = cycle[start + 1:] + cycle[:start + 1]
    backward = forward[-2::-1] + forward[-1:]
    return [PolygonPath(tuple(polygon.vertices[i] for i in path)) for path in (forward, backward)]


def functional_edges(polytope, radius=ORACLE_RADIUS):
    """Edges found by minimising linear functionals: every integer vector in [-radius, radius]^d
    plus, per vertex pair, the sum of the normals of the facets through both."""
    d = polytope.d
    candidates = {c for c in product(range(-radius, radius + 1), repeat=d) if any(c)}
    masks = polytope.incidence
    for i, j in combinations(range(len(polytope.vertices)), 2):
        common = masks[i] & masks[j]
        total = tuple(sum(f.normal[a] for b, f in enumerate(polytope.facets) if common >> b & 1) for a in range(d))
        if any(total):
            candidates.add(total)
    edges = set()
    for c in candidates:
        _, face = min_face(polytope, c)
        if len(face) == 2:
            edges.add(face)
    return sorted(edges)


def _lemma1(rng):
    polytope = random_polytope(rng)
    u = int(rng.integers(len(polytope.vertices)))
    c = (0,) * polytope.d
    while not any(c):
        c = tuple(int(x) for x in rng.integers(-2, 3, size=polytope.d))
    return [check_facet_distance(polytope, u, c)]


def _lemma2(rng):
    polytope = random_polytope(rng)
    size = int(rng.integers(0, polytope.d + 1))
    indices = tuple(sorted(int(i) for i in rng.permutation(polytope.d)[:size]))
    return [check_box_restriction(polytope, IndexSet(indices))]


def _lemma3(rng):
    polytope = random_polytope(rng)
    u, v = (int(x) for x in rng.integers(len(polytope.vertices), size=2))
    pu, pv = polytope.vertices[u], polytope.vertices[v]
    eligible = [i for i in range(polytope.d) if pu[i] + pv[i] <= polytope.k]
    size = int(rng.integers(0, min(3, len(eligible)) + 1))
    indices = tuple(sorted(eligible[int(i)] for i in rng.permutation(len(eligible))[:size]))
    return [check_pair_bound(polytope, u, v, IndexSet(indices))]


def _lemma4(rng):
    polygon = random_polytope(rng, d=2, k=int(rng.integers(2, 5)))
    if (0, 0) not in polygon.vertex_index:
        polygon = convex_hull(list(polygon.vertices) + [(0, 0)], 2, k=polygon.k)
    return [check_polygon_path(path) for path in polygon_paths(polygon)]


def _step(rng):
    polytope = random_polytope(rng, d=3, k=3)
    u, v = (int(x) for x in rng.permutation(len(polytope.vertices))[:2])
    return [check_inductive_step(polytope, u, v)]


def _structure(rng):
    wide = rng.integers(0, 4) == 0
    polytope = random_polytope(rng, d=4, k=5) if wide else random_polytope(rng)
    digest = instance_digest(polytope)
    again = convex_hull(polytope.vertices, polytope.d, k=polytope.k)
    same = Status.HOLDS if again == polytope else Status.VIOLATED
    oracle = functional_edges(polytope)
    edges = list(polytope.edges)
    agree = Status.HOLDS if oracle == edges else Status.VIOLATED
    if agree is Status.VIOLATED:
        logger.warning('edge oracle disagrees on %s: %s vs %s', digest, edges, oracle)
    return [
        LemmaReport('hull', digest, len(again.vertices), len(polytope.vertices), same),
        LemmaReport('edges', digest, len(edges), len(oracle), agree),
    ]


def _zonotope_law(vectors):
    gens = GeneratorSet(d=len(vectors[0]), vectors=tuple(vectors))
    zonotope = zonotope_vertices(gens)
    value, _ = diameter(zonotope)
    directions = zonotope_stats(gens).direction_count
    digest = instance_digest(zonotope, gens.vectors)
    return [LemmaReport('zonotope', digest, value, directions, Status.HOLDS if value == directions else Status.VIOLATED)]


RANDOM_CHECKS = {'lemma1': _lemma1, 'lemma2': _lemma2, 'lemma3': _lemma3, 'lemma4': _lemma4, 'step': _step, 'structure': _structure}


def law_subsets():
    """One generator subset of H1(d,2) with at most 10 elements per orbit of the cube symmetries, d = 2, 3, 4.

    Coordinate permutations and sign changes preserve the diameter of the zonotope and
    its number of generators.
    """
    return [vectors for d in LAW_DIMENSIONS for vectors in generator_orbits(d, 2, LAW_MAX_GENERATORS)]


def run_task(task):
    kind, seed, payload = task
    if kind == 'zonotope':
        return _zonotope_law(payload)
    rng = np.random.default_rng([seed, SUITE_IDS[kind], payload])
    try:
        return RANDOM_CHECKS[kind](rng)
    except LatticeError:
        logger.exception('%s instance %d with seed %d raised', kind, payload, seed)
        raise


def run_suite(suite, n, seed, workers=1):
    if suite not in SUITE_IDS:
        raise InvalidParameterError(f'unknown suite {suite!r}, expected one of {", ".join(SUITES)}')
    tasks = [(suite, seed, i) for i in range(n)]
    if suite == 'structure':
        tasks.extend(('zonotope', seed, vectors) for vectors in law_subsets())
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(run_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        batches = [run_task(task) for task in tasks]
    reports = tuple(report for batch in batches for report in batch)
    result = SuiteResult(suite=suite, seed=seed, instances=len(tasks), reports=reports)
    logger.info('suite %s seed %d: %d holds, %d violated, %d skipped', suite, seed, result.holds, result.violated, result.skipped)
    return result
