"""
Exact convex hulls of lattice point sets in dimension at most 6.

Facets come from a double description pass over the homogenised points
(a monotone chain is used in the plane), vertices and edges are then read
off the facet incidences. Everything is plain integer arithmetic.
"""

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .exceptions import (
    BoxContainmentError,
    CoordinateOverflowError,
    DegenerateHullError,
    DimensionMismatchError,
    InconsistentFacetsError,
    InvalidParameterError,
    ZeroFunctionalError,
)

logger = logging.getLogger(__name__)

MAX_DIMENSION = 6
INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


def checked(value):
    """Return `value` if it fits a signed 64-bit integer, raise otherwise."""
    if not INT64_MIN <= value <= INT64_MAX:
        raise CoordinateOverflowError(f'{value} does not fit in a signed 64-bit integer')
    return value


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def content(vector):
    return math.gcd(*vector)


def determinant(matrix):
    """Bareiss fraction-free determinant of a square integer matrix."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    previous = 1
    for i in range(n - 1):
        if m[i][i] == 0:
            swap = next((r for r in range(i + 1, n) if m[r][i]), None)
            if swap is None:
                return 0
            m[i], m[swap] = m[swap], m[i]
            sign = -sign
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // previous
        previous = m[i][i]
    return sign * m[n - 1][n - 1]


def rank(rows):
    """Exact rank of an integer matrix given as a list of rows."""
    m = [list(row) for row in rows if any(row)]
    if not m:
        return 0
    r = 0
    for col in range(len(m[0])):
        pivot = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r]
        for i in range(r + 1, len(m)):
            f = m[i][col]
            if f:
                row = [p[col] * x - f * y for x, y in zip(m[i], p)]
                g = content(row)
                m[i] = [x // g for x in row] if g > 1 else row
        r += 1
        if r == len(m):
            break
    return r


def kernel_vector(rows):
    """Integer vector orthogonal to the n-1 rows of an (n-1) x n matrix, via signed minors."""
    n = len(rows[0])
    vector = []
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in rows]
        vector.append((-1) ** j * determinant(minor))
    return vector


def affine_dimension(points):
    if len(points) <= 1:
        return 0
    origin = points[0]
    return rank([[a - b for a, b in zip(p, origin)] for p in points[1:]])


def _affine_basis(points):
    """Indices of a maximal affinely independent subset, chosen greedily in input order."""
    basis = [0]
    directions = []
    for i, p in enumerate(points[1:], start=1):
        candidate = directions + [[a - b for a, b in zip(p, points[0])]]
        if rank(candidate) == len(candidate):
            directions = candidate
            basis.append(i)
    return basis


@dataclass(frozen=True, order=True)
class Facet:
    """Inequality normal . x >= offset, tight on a facet; the normal has content 1."""

    normal: tuple
    offset: int

    def slack(self, point):
        return dot(self.normal, point) - self.offset


@dataclass(frozen=True)
class LatticePolytope:
    d: int
    k: int
    vertices: tuple
    facets: tuple
    edges: tuple
    dim: int

    def __str__(self):
        return f'lattice ({self.d},{self.k})-polytope with {len(self.vertices)} vertices, {len(self.edges)} edges'

    @property
    def is_full_dimensional(self):
        return self.dim == self.d

    @cached_property
    def vertex_index(self):
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def incidence(self):
        """Per vertex, bitmask of the facets it lies on."""
        masks = []
        for v in self.vertices:
            mask = 0
            for j, facet in enumerate(self.facets):
                if facet.slack(v) == 0:
                    mask |= 1 << j
            masks.append(mask)
        return masks

    def bounding_box(self):
        lows = tuple(min(v[i] for v in self.vertices) for i in range(self.d))
        highs = tuple(max(v[i] for v in self.vertices) for i in range(self.d))
        return lows, highs

    def neighbours(self, index):
        return sorted({j for a, b in self.edges for i, j in ((a, b), (b, a)) if i == index})


def check_points(points, d, k=None):
    """Validate raw input and return the distinct points as sorted tuples."""
    if not points:
        raise InvalidParameterError('at least one point is required')
    if not 1 <= d <= MAX_DIMENSION:
        raise InvalidParameterError(f'dimension must lie in 1..{MAX_DIMENSION}, got {d}')
    cleaned = set()
    for p in points:
        if len(p) != d:
            raise DimensionMismatchError(f'point {tuple(p)} has {len(p)} coordinates, expected {d}')
        cleaned.add(tuple(checked(int(c)) for c in p))
    largest = max(abs(c) for p in cleaned for c in p)
    # Hadamard bound on the (d+1)x(d+1) orientation determinants.
    if (1 + d * largest * largest) ** (d + 1) > INT64_MAX**2:
        raise CoordinateOverflowError(f'coordinates up to {largest} overflow 64-bit determinants in dimension {d}')
    if k is not None:
        outside = next((p for p in sorted(cleaned) if min(p) < 0 or max(p) > k), None)
        if outside is not None:
            raise BoxContainmentError(f'point {outside} lies outside [0,{k}]^{d}')
    return sorted(cleaned)


def _normalised_facet(normal, offset):
    g = content(normal)
    return Facet(tuple(checked(c // g) for c in normal), checked(offset // g))


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _planar_facets(points):
    """Monotone chain; points are sorted and span the plane."""
    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    ring = chain(points)[:-1] + chain(reversed(points))[:-1]
    facets = []
    for a, b in zip(ring, ring[1:] + ring[:1]):
        normal = (a[1] - b[1], b[0] - a[0])
        facets.append(_normalised_facet(normal, dot(normal, a)))
    return facets


def _double_description(points, d):
    """Facets of the full-dimensional hull of distinct `points` in R^d."""
    lifted = [(1,) + p for p in points]
    basis = _affine_basis(points)
    rays = []
    zeros = []
    for i in basis:
        ray = kernel_vector([lifted[j] for j in basis if j != i])
        if dot(ray, lifted[i]) < 0:
            ray = [-c for c in ray]
        g = content(ray)
        rays.append([c // g for c in ray])
        zeros.append(sum(1 << j for j in basis if j != i))

    processed = set(basis)
    for j, x in enumerate(lifted):
        if j in processed:
            continue
        processed.add(j)
        bit = 1 << j
        values = [dot(ray, x) for ray in rays]
        negative = [i for i, s in enumerate(values) if s < 0]
        if not negative:
            for i, s in enumerate(values):
                if s == 0:
                    zeros[i] |= bit
            continue
        positive = [i for i, s in enumerate(values) if s > 0]
        created = []
        for a in positive:
            for b in negative:
                common = zeros[a] & zeros[b]
                if common.bit_count() < d - 1:
                    continue
                if any(t != a and t != b and zeros[t] & common == common for t in range(len(rays))):
                    continue
                ray = [values[a] * rb - values[b] * ra for ra, rb in zip(rays[a], rays[b])]
                g = content(ray)
                created.append(([c // g for c in ray], common | bit))
        kept = [i for i, s in enumerate(values) if s >= 0]
        rays = [rays[i] for i in kept] + [ray for ray, _ in created]
        zeros = [zeros[i] | (bit if values[i] == 0 else 0) for i in kept] + [z for _, z in created]
        logger.debug('point %d of %d: %d facets', len(processed), len(points), len(rays))
    return [_normalised_facet(ray[1:], -ray[0]) for ray in rays]


def _full_dimensional_facets(points, d):
    if d == 2:
        return _planar_facets(points)
    return _double_description(points, d)


def _assemble(d, k, points, facets, dim, coordinates=None):
    """Keep the points that are vertices, sort everything and derive the edges.

    `coordinates` maps facet normals living in a coordinate projection back to R^d.
    """
    if coordinates is not None:
        lifted = []
        for facet in facets:
            normal = [0] * d
            for axis, c in zip(coordinates, facet.normal):
                normal[axis] = c
            lifted.append(Facet(tuple(normal), facet.offset))
        facets = lifted
    facets = sorted(set(facets))
    normals = [f.normal for f in facets]
    vertices = []
    for p in points:
        incident = [n for n, f in zip(normals, facets) if f.slack(p) == 0]
        if len(incident) >= dim and rank(incident) == dim:
            vertices.append(p)
    polytope = LatticePolytope(d=d, k=k, vertices=tuple(sorted(vertices)), facets=tuple(facets), edges=(), dim=dim)
    return LatticePolytope(d=d, k=k, vertices=polytope.vertices, facets=polytope.facets, edges=tuple(_edges(polytope)), dim=dim)


def _edges(polytope):
    masks = polytope.incidence
    normals = [f.normal for f in polytope.facets]
    target = polytope.dim - 1
    ranks = {}
    edges = []
    for i, j in combinations(range(len(polytope.vertices)), 2):
        common = masks[i] & masks[j]
        if common.bit_count() < target:
            continue
        if common not in ranks:
            ranks[common] = rank([n for b, n in enumerate(normals) if common >> b & 1])
        if ranks[common] == target:
            edges.append((i, j))
    return edges


def convex_hull(points, d, k=None, embed=False):
    """Vertices, facets and edges of the convex hull of lattice points.

    Lower-dimensional input raises `DegenerateHullError` unless `embed` is set, in
    which case the hull is computed in a coordinate projection that is injective on
    the affine hull and the facet normals are lifted back (they are relative facets).
    """
    pts = check_points(points, d, k)
    if k is None:
        k = max(1, max(max(p) for p in pts))
        if min(min(p) for p in pts) < 0:
            raise BoxContainmentError('points with negative coordinates need an explicit translation')
    dim = affine_dimension(pts)
    if dim < d and not embed:
        raise DegenerateHullError(dim, d)
    if dim == 0:
        return LatticePolytope(d=d, k=k, vertices=(pts[0],), facets=(), edges=(), dim=0)
    if dim == d:
        return _assemble(d, k, pts, _full_dimensional_facets(pts, d), dim)

    origin = pts[0]
    directions = [[a - b for a, b in zip(p, origin)] for p in pts[1:]]
    coordinates = []
    for axis in range(d):
        trial = coordinates + [axis]
        if rank([[row[a] for a in trial] for row in directions]) == len(trial):
            coordinates = trial
        if len(coordinates) == dim:
            break
    projected = [tuple(p[a] for a in coordinates) for p in pts]
    facets = _full_dimensional_facets(sorted(projected), dim)
    logger.debug('hull of dimension %d embedded through coordinates %s', dim, coordinates)
    return _assemble(d, k, pts, facets, dim, coordinates=coordinates)


def vertex_adjacency(polytope):
    """Edges recomputed from the facet incidences: (u, v) is an edge iff the facets
    through both meet in a face of affine dimension 1."""
    if polytope.dim > 0 and not polytope.facets:
        raise InconsistentFacetsError('polytope has no facets')
    for facet in polytope.facets:
        slacks = [facet.slack(v) for v in polytope.vertices]
        if min(slacks) < 0:
            raise InconsistentFacetsError(f'facet {facet} cuts off a vertex')
        if min(slacks) > 0:
            raise InconsistentFacetsError(f'facet {facet} touches no vertex')
    return _edges(polytope)


def min_face(polytope, c):
    """Minimum of the functional c over the polytope and the vertices attaining it."""
    if len(c) != polytope.d:
        raise DimensionMismatchError(f'functional has {len(c)} entries, expected {polytope.d}')
    if not any(c):
        raise ZeroFunctionalError('the zero functional has no proper minimal face')
    values = [dot(c, v) for v in polytope.vertices]
    gamma = min(values)
    return gamma, tuple(i for i, value in enumerate(values) if value == gamma)
