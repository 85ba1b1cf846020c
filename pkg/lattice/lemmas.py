"""
Runtime checks of the distance inequalities behind the diameter upper bounds.

Every check returns a LemmaReport whose status is one of holds, violated,
not-applicable (side conditions unmet) or unknown (a needed delta value is not known).
Vertex arguments are vertex indices of the polytope; coordinate indices are 0-based.
"""

import enum
import hashlib
import logging
from dataclasses import dataclass, field

from .bounds import delta_exact, upper_bound, upper_candidates
from .exceptions import BoundsMismatchError, InvalidParameterError, PreconditionError
from .geometry import dot, min_face
from .graph import bfs_distances, diameter, distance_to_face

logger = logging.getLogger(__name__)


class Status(enum.Enum):
    HOLDS = 'holds'
    VIOLATED = 'violated'
    NOT_APPLICABLE = 'not-applicable'
    UNKNOWN = 'unknown'

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class LemmaReport:
    lemma: str
    instance_digest: str
    lhs: int | None
    rhs: int | None
    status: Status
    detail: dict = field(default_factory=dict, compare=False)

    @property
    def skipped(self):
        return self.status in (Status.NOT_APPLICABLE, Status.UNKNOWN)


@dataclass(frozen=True)
class IndexSet:
    indices: tuple
    bounds: tuple | None = None

    def __post_init__(self):
        if len(set(self.indices)) != len(self.indices):
            raise InvalidParameterError(f'indices {self.indices} are not distinct')
        if self.bounds is not None and len(self.bounds) != len(self.indices):
            raise InvalidParameterError('one (low, high) pair is needed per index')

    def __len__(self):
        return len(self.indices)

    def validate(self, d):
        if any(not 0 <= i < d for i in self.indices):
            raise InvalidParameterError(f'indices {self.indices} fall outside 0..{d - 1}')


@dataclass(frozen=True)
class PolygonPath:
    vertices: tuple

    def turns(self):
        ring = self.vertices
        n = len(ring)
        turns = []
        for j in range(n):
            a, b, c = ring[j - 1], ring[j], ring[(j + 1) % n]
            turns.append((b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]))
        return turns

    def is_convex(self):
        turns = self.turns()
        return len(self.vertices) >= 3 and (all(t > 0 for t in turns) or all(t < 0 for t in turns))


def instance_digest(polytope, *extra):
    text = repr((polytope.d, polytope.k, polytope.vertices, extra))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def known_delta(d, k):
    """delta(d,k) with delta(0,k) = 0 for the single point."""
    if d == 0:
        return 0
    return delta_exact(d, k)


def _verdict(lhs, rhs, strict=False):
    ok = lhs < rhs if strict else lhs <= rhs
    return Status.HOLDS if ok else Status.VIOLATED


def check_facet_distance(polytope, u, c):
    """d(u,F) <= c.u - gamma for the face F minimising c."""
    gamma, face = min_face(polytope, c)
    lhs = distance_to_face(polytope, u, face)
    rhs = dot(c, polytope.vertices[u]) - gamma
    return LemmaReport('lemma1', instance_digest(polytope, u, tuple(c)), lhs, rhs, _verdict(lhs, rhs), {'gamma': gamma})


def check_box_restriction(polytope, index_set):
    """delta(P) <= delta(d - |I|, k) + sum over I of (h_i - l_i), with l_i, h_i recomputed from P."""
    index_set.validate(polytope.d)
    lows, highs = polytope.bounding_box()
    actual = tuple((lows[i], highs[i]) for i in index_set.indices)
    if index_set.bounds is not None and tuple(map(tuple, index_set.bounds)) != actual:
        raise BoundsMismatchError(f'declared coordinate bounds {index_set.bounds} differ from {actual}')
    digest = instance_digest(polytope, index_set.indices)
    rest = known_delta(polytope.d - len(index_set), polytope.k)
    if rest is None:
        return LemmaReport('lemma2', digest, None, None, Status.UNKNOWN)
    lhs, _ = diameter(polytope)
    rhs = rest + sum(h - low for low, h in actual)
    return LemmaReport('lemma2', digest, lhs, rhs, _verdict(lhs, rhs))


def check_pair_bound(polytope, u, v, index_set):
    """d(u,v) <= delta(d - |I|, k) + sum over I of (u_i + v_i), strict when 1 <= |I| <= 2 and every vertex has a positive sum over I."""
    index_set.validate(polytope.d)
    if len(index_set) > 3:
        raise PreconditionError(f'at most 3 indices are allowed, got {len(index_set)}')
    pu, pv = polytope.vertices[u], polytope.vertices[v]
    crowded = [i for i in index_set.indices if pu[i] + pv[i] > polytope.k]
    if crowded:
        raise PreconditionError(f'u_i + v_i exceeds k = {polytope.k} at indices {crowded}')
    digest = instance_digest(polytope, u, v, index_set.indices)
    rest = known_delta(polytope.d - len(index_set), polytope.k)
    if rest is None:
        return LemmaReport('lemma3', digest, None, None, Status.UNKNOWN)
    lhs = bfs_distances(polytope, u).dist[v]
    rhs = rest + sum(pu[i] + pv[i] for i in index_set.indices)
    strict = 1 <= len(index_set) <= 2 and min(sum(x[i] for i in index_set.indices) for x in polytope.vertices) > 0
    return LemmaReport('lemma3', digest, lhs, rhs, _verdict(lhs, rhs, strict=strict), {'strict': strict})


def check_polygon_path(path):
    """Coordinate sums along a polygon labelled towards the origin drop by 2 at every inner step."""
    ring = path.vertices
    p = len(ring) - 1
    digest = hashlib.sha256(repr(ring).encode()).hexdigest()[:16]
    first_step = (ring[0][0] - ring[1][0], ring[0][1] - ring[1][1]) if p >= 1 else None
    if not path.is_convex() or tuple(ring[-1]) != (0, 0) or first_step not in ((1, 0), (0, 1), (1, 1)):
        return LemmaReport('lemma4', digest, None, None, Status.NOT_APPLICABLE)
    sums = [x + y for x, y in ring]
    if p <= 2:
        return LemmaReport('lemma4', digest, 0, 0, Status.HOLDS, {'vacuous': True})
    j = max(range(2, p), key=lambda j: sums[j] + 2 - sums[j - 1])
    lhs, rhs = sums[j] + 2, sums[j - 1]
    return LemmaReport('lemma4', digest, lhs, rhs, _verdict(lhs, rhs), {'j': j})


def check_inductive_step(polytope, u, v):
    """One of d(u,v) <= delta(d-1,k)+k-1, delta(d-2,k)+2k-2, delta(d-3,k)+3k-2."""
    d, k = polytope.d, polytope.k
    digest = instance_digest(polytope, u, v)
    if d < 3 or k < 3:
        return LemmaReport('step', digest, None, None, Status.NOT_APPLICABLE)
    deltas = [known_delta(d - p, k) for p in (1, 2, 3)]
    if None in deltas:
        return LemmaReport('step', digest, None, None, Status.UNKNOWN)
    lhs = bfs_distances(polytope, u).dist[v]
    sides = [deltas[0] + k - 1, deltas[1] + 2 * k - 2, deltas[2] + 3 * k - 2]
    holding = [name for name, side in zip(('i', 'ii', 'iii'), sides) if lhs <= side]
    status = Status.HOLDS if holding else Status.VIOLATED
    if not holding:
        logger.warning('inductive step fails on %s: d(u,v) = %d exceeds %s', digest, lhs, sides)
    return LemmaReport('step', digest, lhs, max(sides), status, {'sides': sides, 'holding': holding})


def check_theorem1_recursion(d, k):
    """The induction max over p of upper(d-p,k) + pk - q, q = 1 for p = 1 and 2 otherwise,
    compared with the closed-form theorem bound at (d,k)."""
    digest = hashlib.sha256(repr(('recursion', d, k)).encode()).hexdigest()[:16]
    if d < 4 or k < 3:
        return LemmaReport('recursion', digest, None, None, Status.NOT_APPLICABLE)
    lhs = max(upper_bound(d - p, k)[0] + p * k - (1 if p == 1 else 2) for p in (1, 2, 3))
    theorems = [value for value, provenance in upper_candidates(d, k) if provenance.value.startswith('Theorem')]
    rhs = min(theorems)
    return LemmaReport('recursion', digest, lhs, rhs, _verdict(lhs, rhs))
