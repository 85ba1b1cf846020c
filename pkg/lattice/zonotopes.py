"""
Primitive generator sets H1(d,p) and the zonotopes they span.
"""

import logging
import math
from dataclasses import dataclass
from functools import cmp_to_key
from itertools import combinations, permutations, product

import numpy as np

from .exceptions import BudgetExceededError, InvalidParameterError, PreconditionError
from .geometry import (
    MAX_DIMENSION,
    Facet,
    _assemble,
    check_points,
    content,
    convex_hull,
    dot,
    kernel_vector,
    rank,
)
from .graph import diameter

logger = logging.getLogger(__name__)

MAX_GENERATORS = 20
NODE_BUDGET = 2_000_000
CHUNK_ROWS = 1 << 14


def is_positive(vector):
    """v > 0: the first non-zero coordinate is positive."""
    return next((c > 0 for c in vector if c), False)


@dataclass(frozen=True)
class GeneratorSet:
    d: int
    vectors: tuple

    def __post_init__(self):
        for v in self.vectors:
            if len(v) != self.d:
                raise InvalidParameterError(f'generator {v} is not {self.d}-dimensional')
            if content(v) != 1:
                raise InvalidParameterError(f'generator {v} is not primitive')
            if not is_positive(v):
                raise InvalidParameterError(f'generator {v} does not have a positive leading coordinate')
        if len(set(self.vectors)) != len(self.vectors):
            raise InvalidParameterError('generators must be pairwise distinct')

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)


@dataclass(frozen=True)
class ZonotopeStats:
    extents: tuple
    direction_count: int


def euler_phi(n):
    if n < 1:
        raise InvalidParameterError('Euler totient is defined for n >= 1')
    result, value, prime = n, n, 2
    while prime * prime <= value:
        if value % prime == 0:
            while value % prime == 0:
                value //= prime
            result -= result // prime
        prime += 1
    if value > 1:
        result -= result // value
    return result


def primitive_generators(d, p):
    """All v with |v|_1 <= p, gcd(v) = 1 and v > 0, sorted lexicographically."""
    if d < 1 or p < 1:
        raise InvalidParameterError('dimension and norm bound must be positive')
    vectors = [
        v
        for v in product(range(-p, p + 1), repeat=d)
        if sum(abs(c) for c in v) <= p and is_positive(v) and math.gcd(*v) == 1
    ]
    return GeneratorSet(d=d, vectors=tuple(sorted(vectors)))


def coordinate_extents(gens):
    return tuple(sum(abs(v[i]) for v in gens.vectors) for i in range(gens.d))


def zonotope_stats(gens):
    directions = {tuple(c // content(v) * (1 if is_positive(v) else -1) for c in v) for v in gens.vectors if any(v)}
    return ZonotopeStats(extents=coordinate_extents(gens), direction_count=len(directions))


def _angle_key(u, v):
    half_u = u[1] < 0 or (u[1] == 0 and u[0] < 0)
    half_v = v[1] < 0 or (v[1] == 0 and v[0] < 0)
    if half_u != half_v:
        return -1 if not half_u else 1
    cross = u[0] * v[1] - u[1] * v[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def _polygon_sum(vectors):
    """Vertices of the planar sum of segments: walk the edges g and -g in angular order."""
    edges = sorted([v for v in vectors] + [tuple(-c for c in v) for v in vectors], key=cmp_to_key(_angle_key))
    point, ring = (0, 0), []
    for e in edges:
        ring.append(point)
        point = (point[0] + e[0], point[1] + e[1])
    return ring


def _zonotope_facets(vectors, d):
    """Facets of a full-dimensional zonotope from its (d-1)-subsets of generators."""
    facets = set()
    for subset in combinations(vectors, d - 1):
        if rank(subset) < d - 1:
            continue
        normal = kernel_vector([list(v) for v in subset])
        g = content(normal)
        normal = [c // g for c in normal]
        for sign in (1, -1):
            n = [sign * c for c in normal]
            offset = sum(min(0, dot(n, v)) for v in vectors)
            facets.add(Facet(tuple(n), offset))
    return sorted(facets)


def _sign_sums(vectors, d):
    """All 2^m partial sums, in chunks, as int64 arrays."""
    gens = np.array(vectors, dtype=np.int64).reshape(len(vectors), d)
    m = len(vectors)
    total = 1 << m
    bits = np.arange(m, dtype=np.int64)
    for start in range(0, total, CHUNK_ROWS):
        masks = np.arange(start, min(total, start + CHUNK_ROWS), dtype=np.int64)
        signs = (masks[:, None] >> bits) & 1
        yield signs @ gens


def zonotope_vertices(gens, max_generators=MAX_GENERATORS):
    """The Minkowski sum of the segments [0, g], translated into the positive orthant."""
    m, d = len(gens), gens.d
    if m == 0:
        raise InvalidParameterError('a zonotope needs at least one generator')
    if m > max_generators:
        raise BudgetExceededError(f'{m} generators exceed the sign-enumeration budget of {max_generators}')
    if d > MAX_DIMENSION:
        raise InvalidParameterError(f'dimension {d} exceeds {MAX_DIMENSION}')
    vectors = list(gens.vectors)
    shift = tuple(-sum(min(0, v[i]) for v in vectors) for i in range(d))
    extents = coordinate_extents(gens)
    k = max(1, max(extents))
    check_points([extents], d)

    if d == 2 or rank(vectors) < d:
        if d == 2 and rank(vectors) == 2:
            ring = _polygon_sum(vectors)
        else:
            ring = {tuple(int(c) for c in row) for chunk in _sign_sums(vectors, d) for row in chunk}
        lows = [min(p[i] for p in ring) for i in range(d)]
        points = [tuple(c - low for c, low in zip(p, lows)) for p in ring]
        return convex_hull(points, d, k=k, embed=True)

    facets = _zonotope_facets(vectors, d)
    normals = np.array([f.normal for f in facets], dtype=np.int64)
    offsets = np.array([f.offset for f in facets], dtype=np.int64)
    candidates = set()
    for chunk in _sign_sums(vectors, d):
        tight = (chunk @ normals.T) == offsets
        for row in chunk[tight.sum(axis=1) >= d]:
            candidates.add(tuple(int(c) for c in row))
    logger.debug('%d generators in dimension %d: %d facets, %d vertex candidates', m, d, len(facets), len(candidates))
    translated = [Facet(f.normal, f.offset + dot(f.normal, shift)) for f in facets]
    points = sorted(tuple(c + s for c, s in zip(p, shift)) for p in candidates)
    return _assemble(d, k, points, translated, d)


def h1_2d_stats(p):
    """k, diameter and the asymptotic estimate for the planar H1(2,p)."""
    if p < 1:
        raise InvalidParameterError('p must be positive')
    k = sum(i * euler_phi(i) for i in range(1, p + 1))
    value = sum(2 * euler_phi(i) for i in range(1, p + 1))
    estimate = 6 * (k / (2 * math.pi)) ** (2 / 3)
    return k, value, estimate


def planar_subset_generators(k):
    """Largest set of planar primitive generators whose zonotope fits in [0,k]^2.

    A 0/1 knapsack over the two coordinate spans, one item per primitive direction.
    """
    if k < 1:
        raise InvalidParameterError('k must be positive')
    items = [(a, b) for a in range(k + 1) for b in range(-k, k + 1) if is_positive((a, b)) and math.gcd(a, b) == 1]
    best = np.zeros((k + 1, k + 1), dtype=np.int64)
    taken = np.zeros((len(items), k + 1, k + 1), dtype=bool)
    for i, (a, b) in enumerate(items):
        b = abs(b)
        candidate = best[: k + 1 - a, : k + 1 - b] + 1
        better = candidate > best[a:, b:]
        taken[i, a:, b:] = better
        best[a:, b:] = np.where(better, candidate, best[a:, b:])
    chosen, width, height = [], k, k
    for i in range(len(items) - 1, -1, -1):
        if taken[i, width, height]:
            a, b = items[i]
            chosen.append(items[i])
            width, height = width - a, height - abs(b)
    return GeneratorSet(d=2, vectors=tuple(sorted(chosen)))


def _symmetry_permutations(gens):
    """Index permutations of a generator pool under coordinate permutations and sign changes."""
    index = {v: i for i, v in enumerate(gens.vectors)}
    rows = []
    for perm, signs in product(permutations(range(gens.d)), product((1, -1), repeat=gens.d)):
        row = []
        for v in gens.vectors:
            w = tuple(s * v[a] for a, s in zip(perm, signs))
            row.append(index[w if is_positive(w) else tuple(-c for c in w)])
        rows.append(row)
    return np.array(rows, dtype=np.int64)


def generator_orbits(d, p, max_m, chunk=2048):
    """One subset of H1(d,p) with 1..max_m elements per orbit of the symmetries of the cube.

    A subset is kept when its bit mask is the smallest among the masks of its images.
    """
    gens = primitive_generators(d, p)
    n = len(gens)
    if n > 62:
        raise InvalidParameterError(f'{n} generators do not fit a 64-bit mask')
    weights = np.left_shift(np.int64(1), _symmetry_permutations(gens))
    own = np.left_shift(np.int64(1), np.arange(n, dtype=np.int64))
    orbits = []
    for m in range(1, min(max_m, n) + 1):
        subsets = np.array(list(combinations(range(n), m)), dtype=np.int64)
        for start in range(0, len(subsets), chunk):
            block = subsets[start : start + chunk]
            smallest = weights[:, block].sum(axis=2).min(axis=0)
            keep = block[smallest == own[block].sum(axis=1)]
            orbits.extend(tuple(gens.vectors[int(i)] for i in row) for row in keep)
    logger.debug('H1(%d,%d) subsets up to size %d: %d orbits', d, p, max_m, len(orbits))
    return orbits


def subset_search(d, k, target, node_budget=NODE_BUDGET, verify=True):
    """First subset of H1(d,2), in depth-first order, whose zonotope fits in [0,k]^d
    and has at least `target` generators (hence diameter at least `target`).

    Generators are ordered by 1-norm, then lexicographically; inclusion is tried first.
    Returns None when the search space is exhausted.
    """
    if d > 5 or k > 2 * d - 1 or d < 1 or k < 1:
        raise PreconditionError(f'subset search covers d <= 5 and k <= 2d - 1, got d={d}, k={k}')
    if target < 1:
        raise InvalidParameterError('target must be positive')
    pool = sorted(primitive_generators(d, 2).vectors, key=lambda v: (sum(abs(c) for c in v), v))
    nodes = 0
    chosen = []
    extents = [0] * d

    def explore(position):
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceededError(f'subset search exceeded {node_budget} nodes', explored=nodes)
        if len(chosen) >= target:
            return True
        if len(chosen) + len(pool) - position < target:
            return False
        v = pool[position]
        if all(e + abs(c) <= k for e, c in zip(extents, v)):
            chosen.append(v)
            for i, c in enumerate(v):
                extents[i] += abs(c)
            if explore(position + 1):
                return True
            chosen.pop()
            for i, c in enumerate(v):
                extents[i] -= abs(c)
        return explore(position + 1)

    if not explore(0):
        logger.info('subset search (%d,%d) target %d exhausted after %d nodes', d, k, target, nodes)
        return None
    found = GeneratorSet(d=d, vectors=tuple(sorted(chosen)))
    if verify and len(found) <= MAX_GENERATORS:
        value, _ = diameter(zonotope_vertices(found))
        if value != len(found):
            raise AssertionError(f'zonotope of {found.vectors} has diameter {value}, expected {len(found)}')
    return found
