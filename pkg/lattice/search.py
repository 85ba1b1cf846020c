"""
Canonical forms under the symmetries of the cube, the exact planar maximum
diameter, and a pruned search for (d,k)-polytopes of a prescribed diameter.
"""

import enum
import hashlib
import logging
import math
import time
from dataclasses import dataclass, field
from functools import cmp_to_key
from itertools import permutations, product

from .bounds import conjecture_value, delta_exact, upper_bound
from .exceptions import BudgetExceededError, InvalidParameterError, LatticeError, PreconditionError
from .geometry import _cross, convex_hull
from .graph import all_distances, diameter, distance
from .zonotopes import NODE_BUDGET, _angle_key, subset_search, zonotope_vertices

logger = logging.getLogger(__name__)

SUBSET_MAX_K = 4
EDGE_MAX_K = 6
SEARCH_MAX_DIMENSION = 5
TIME_BUDGET = 60.0


def _transforms(d):
    return product(permutations(range(d)), product((False, True), repeat=d))


def canonical_points(points, d):
    """Lexicographically smallest sorted image of `points` under coordinate
    permutations and reflections, translated so every coordinate minimum is 0."""
    points = list(points)
    best = None
    for perm, flips in _transforms(d):
        moved = [tuple(-p[a] if flip else p[a] for a, flip in zip(perm, flips)) for p in points]
        lows = [min(q[i] for q in moved) for i in range(d)]
        image = tuple(sorted(tuple(c - low for c, low in zip(q, lows)) for q in moved))
        if best is None or image < best:
            best = image
    return best


def canonical_form(polytope):
    return canonical_points(polytope.vertices, polytope.d)


def is_canonical(polytope):
    return polytope.vertices == canonical_form(polytope)


def symmetry_images(polytope):
    """Vertex lists of every image of the polytope under the 2^d d! symmetries of [0,k]^d."""
    d, k = polytope.d, polytope.k
    images = []
    for perm, flips in _transforms(d):
        images.append(tuple(sorted(tuple(k - v[a] if flip else v[a] for a, flip in zip(perm, flips)) for v in polytope.vertices)))
    return images


def points_digest(points, d):
    canonical = canonical_points(points, d)
    text = f'{d}\n' + '\n'.join(' '.join(str(c) for c in p) for p in canonical)
    return hashlib.sha256(text.encode()).hexdigest()


def canonical_digest(polytope):
    return points_digest(polytope.vertices, polytope.d)


@dataclass(frozen=True)
class SearchCertificate:
    polytope: object
    diameter: int
    witness: tuple
    canonical_digest: str


def make_certificate(polytope, canonical=False):
    """Certificate of a polytope; with `canonical` the polytope is first moved to its canonical image."""
    if canonical and not is_canonical(polytope):
        polytope = convex_hull(canonical_form(polytope), polytope.d, k=polytope.k, embed=True)
    value, witness = diameter(polytope)
    return SearchCertificate(polytope=polytope, diameter=value, witness=witness, canonical_digest=canonical_digest(polytope))


def verify_certificate(certificate):
    """Recompute hull, box containment, BFS diameter, witness distance and digest from the vertex list."""
    polytope = certificate.polytope
    try:
        rebuilt = convex_hull(polytope.vertices, polytope.d, k=polytope.k)
        value, _ = diameter(rebuilt)
    except LatticeError as exc:
        logger.warning('certificate %s does not rebuild: %s', certificate.canonical_digest[:12], exc)
        return False
    u, v = certificate.witness
    checks = {
        'vertices': rebuilt.vertices == polytope.vertices,
        'diameter': value == certificate.diameter,
        'witness': max(u, v) < len(rebuilt.vertices) and distance(rebuilt, u, v) == certificate.diameter,
        'digest': canonical_digest(rebuilt) == certificate.canonical_digest,
    }
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        logger.warning('certificate %s fails %s', certificate.canonical_digest[:12], ', '.join(failed))
    return not failed


def verify_record(record):
    """Check a stored certificate as listed: its points must be exactly the vertices of their hull."""
    try:
        polytope = convex_hull(record.points, record.d, k=record.k)
    except LatticeError as exc:
        logger.warning('certificate %s does not rebuild: %s', record.digest[:12], exc)
        return False
    if len(record.points) != len(polytope.vertices) or set(record.points) != set(polytope.vertices):
        logger.warning('certificate %s lists %d points for %d vertices', record.digest[:12], len(record.points), len(polytope.vertices))
        return False
    _, witness = diameter(polytope)
    return verify_certificate(SearchCertificate(polytope=polytope, diameter=record.diameter, witness=witness, canonical_digest=record.digest))


def meets_ceiling_conditions(polytope):
    """Whether every pair of vertices at maximum distance is antipodal in [0,k]^d
    and both ends move by at most 1 per coordinate along each of their edges."""
    k, vertices = polytope.k, polytope.vertices
    tables = all_distances(polytope)
    value = max(max(table.dist) for table in tables)
    for table in tables:
        u = table.source
        for v in range(u + 1, len(vertices)):
            if table.dist[v] != value:
                continue
            if any(a + b != k for a, b in zip(vertices[u], vertices[v])):
                return False
            for end in (u, v):
                if any(abs(a - b) > 1 for w in polytope.neighbours(end) for a, b in zip(vertices[w], vertices[end])):
                    return False
    return True


def _hull_size(points):
    """Number of strict vertices of the planar hull of lexicographically sorted points."""
    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    return len(chain(points)) + len(chain(reversed(points))) - 2


class _Budget:
    def __init__(self, nodes, seconds=None):
        self.limit = nodes
        self.deadline = None if seconds is None else time.monotonic() + seconds
        self.spent = 0

    def tick(self, what):
        self.spent += 1
        if self.spent > self.limit:
            raise BudgetExceededError(f'{what} exceeded {self.limit} nodes', explored=self.spent)
        if self.deadline is not None and self.spent % 64 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceededError(f'{what} ran out of time after {self.spent} nodes', explored=self.spent)


def _convex_subsets(k, budget):
    """Every point set of the (k+1)^2 grid in convex position with at least 3 points, as sorted lists."""
    grid = sorted(product(range(k + 1), repeat=2))

    def extend(start, chosen):
        for i in range(start, len(grid)):
            trial = chosen + [grid[i]]
            if len(trial) >= 3 and _hull_size(trial) != len(trial):
                continue
            budget.tick('planar subset enumeration')
            if len(trial) >= 3:
                yield trial
            yield from extend(i + 1, trial)

    yield from extend(0, [])


def _subset_maximizers(k, budget):
    best, rings = 0, []
    for subset in _convex_subsets(k, budget):
        value = len(subset) // 2
        if value > best:
            best, rings = value, []
        if value == best:
            rings.append(subset)
    return best, rings


def _quadrant(v):
    a, b = v
    if a > 0 and b >= 0:
        return 0
    if a <= 0 and b > 0:
        return 1
    if a < 0 and b <= 0:
        return 2
    return 3


def _quadrant_chains(k):
    """Per quadrant, {(sum |a|, sum |b|): {length: [chains]}} over multisets of distinct primitive
    edge directions in angular order; a chain is a tuple of scaled edge vectors."""
    directions = sorted(
        ((a, b) for a in range(-k, k + 1) for b in range(-k, k + 1) if (a, b) != (0, 0) and math.gcd(a, b) == 1),
        key=cmp_to_key(_angle_key),
    )
    tables = []
    for q in range(4):
        mine = [v for v in directions if _quadrant(v) == q]
        table = {}

        def grow(position, chain, width, height, mine=mine, table=table):
            table.setdefault((width, height), {}).setdefault(len(chain), []).append(tuple(chain))
            for i in range(position, len(mine)):
                a, b = abs(mine[i][0]), abs(mine[i][1])
                scale = 1
                while width + scale * a <= k and height + scale * b <= k:
                    grow(i + 1, chain + [(scale * mine[i][0], scale * mine[i][1])], width + scale * a, height + scale * b)
                    scale += 1

        grow(0, [], 0, 0)
        tables.append(table)
    return tables


def _edge_maximizers(k, budget):
    """Convex lattice polygons in [0,k]^2 as closed cycles of edge vectors, one chain per quadrant.

    Closing the cycle means the positive and negative coordinate spans agree:
    A0 + A3 = A1 + A2 = width and B0 + B1 = B2 + B3 = height.
    """
    t0, t1, t2, t3 = _quadrant_chains(k)
    combos = []
    for (a0, b0), (a1, b1), (a2, b2) in product(t0, t1, t2):
        budget.tick('edge-vector enumeration')
        width, height = a1 + a2, b0 + b1
        key3 = (width - a0, height - b2)
        if width > k or height > k or key3 not in t3:
            continue
        combos.append(((a0, b0), (a1, b1), (a2, b2), key3))

    def lengths(combo):
        return [max(table[key]) for table, key in zip((t0, t1, t2, t3), combo)]

    best = max(sum(lengths(c)) // 2 for c in combos)
    rings = []
    for combo in combos:
        if sum(lengths(combo)) // 2 < best:
            continue
        per_quadrant = [table[key].items() for table, key in zip((t0, t1, t2, t3), combo)]
        for choice in product(*per_quadrant):
            n = sum(length for length, _ in choice)
            if n < 3 or n // 2 != best:
                continue
            for chains in product(*(group for _, group in choice)):
                budget.tick('edge-vector enumeration')
                point, ring = (0, 0), []
                for edge in (e for chain in chains for e in chain):
                    ring.append(point)
                    point = (point[0] + edge[0], point[1] + edge[1])
                rings.append(ring)
    return best, rings


def enumerate_max_diameter_2d(k, strategy=None, node_budget=NODE_BUDGET):
    """Largest diameter of a lattice (2,k)-polygon and one certificate per maximizer up to symmetry.

    `strategy` is 'subset' (all convex point sets of the grid, k <= 4) or 'edges'
    (closed cycles of primitive edge vectors, k <= 6); by default subsets are used up to k = 3.
    """
    if k < 1:
        raise InvalidParameterError(f'k must be positive, got {k}')
    if strategy is None:
        strategy = 'subset' if k <= 3 else 'edges'
    limit = {'subset': SUBSET_MAX_K, 'edges': EDGE_MAX_K}.get(strategy)
    if limit is None:
        raise InvalidParameterError(f'unknown strategy {strategy!r}')
    if k > limit:
        raise BudgetExceededError(f'the {strategy} strategy is limited to k <= {limit}, got k = {k}')
    budget = _Budget(node_budget)
    best, rings = (_subset_maximizers if strategy == 'subset' else _edge_maximizers)(k, budget)

    unique = {}
    for ring in rings:
        lows = [min(p[i] for p in ring) for i in range(2)]
        points = [(x - lows[0], y - lows[1]) for x, y in ring]
        digest = points_digest(points, 2)
        if digest not in unique:
            unique[digest] = points
    certificates = [make_certificate(convex_hull(unique[digest], 2, k=k), canonical=True) for digest in sorted(unique)]
    logger.info('delta(2,%d) = %d by %s enumeration: %d polygons, %d up to symmetry', k, best, strategy, len(rings), len(unique))
    return best, certificates


class Outcome(enum.Enum):
    FOUND = 'found'
    EXHAUSTED = 'exhausted'
    BUDGET_EXCEEDED = 'budget-exceeded'

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SearchOutcome:
    status: Outcome
    d: int
    k: int
    target: int
    certificate: SearchCertificate | None = None
    assumptions: tuple = ()
    conditions_used: bool = False
    explored: int = 0
    notes: dict = field(default_factory=dict, compare=False)

    def summary(self):
        head = f'({self.d},{self.k}) target {self.target}'
        if self.status is Outcome.FOUND:
            return f'{head}: found a polytope of diameter {self.certificate.diameter}'
        if self.status is Outcome.BUDGET_EXCEEDED:
            return f'{head}: budget exceeded after {self.explored} nodes'
        if self.conditions_used:
            ceiling = upper_bound(self.d, self.k)[0]
            return (
                f'{head}: exhausted; the pruning assumes the conditions a polytope of diameter {ceiling} must meet, '
                f'so this refutes diameter >= {ceiling} only'
            )
        return f'{head}: exhausted under {"; ".join(self.assumptions)}'


UPPER_BOUND = 'no polytope exceeds the upper bound'
EXHAUSTIVE_2D = 'exhaustive enumeration of convex lattice polygons'
ANTIPODAL = (
    'every pair u, v at maximum distance has u_i + v_i = k for every i, '
    'and moves by at most 1 per coordinate to each graph neighbour'
)
SECTIONS = 'every cube facet section has diameter delta(d-1,k)'
ANTIPODAL_SCAFFOLD = 'growth restricted to antipodal seed pairs'


def _antipodal_seeds(d, k):
    for u in product(range(k // 2 + 1), repeat=d):
        v = tuple(k - c for c in u)
        if list(u) == sorted(u) and u != v:
            yield u, v


def _section_ok(chosen, axis, side, d, k, expected):
    points = [p[:axis] + p[axis + 1:] for p in chosen if p[axis] == side]
    try:
        section = convex_hull(points, d - 1, k=k)
    except LatticeError:
        return False
    return diameter(section)[0] == expected


def _grow(d, k, target, u, v, section_diameter, seen, budget, conditions=False):
    """Depth-first growth of a point set in convex position from the seed pair; returns a
    certificate of diameter >= target or None.

    `seen` receives the digest of every evaluated point set that does not qualify.
    """
    near = [p for p in product(range(k + 1), repeat=d) if p not in (u, v)]
    pool = sorted(near, key=lambda p: (min(max(abs(a - b) for a, b in zip(p, s)) for s in (u, v)) > 1, p))
    last = {}
    for position, p in enumerate(pool):
        for axis in range(d):
            if p[axis] in (0, k):
                last[(axis, p[axis])] = position
    finalised = {}
    if section_diameter is not None:
        for axis, side in product(range(d), (0, k)):
            finalised.setdefault(last.get((axis, side), -1), []).append((axis, side))

    chosen = [u, v]
    stack = [(0, False)]
    while stack:
        position, undo = stack.pop()
        if undo:
            chosen.pop()
            continue
        budget.tick('pruned search')
        if any(not _section_ok(chosen, axis, side, d, k, section_diameter) for axis, side in finalised.get(position - 1, ())):
            continue
        if position == len(pool) or len(chosen) + len(pool) - position < target + 1:
            continue
        stack.append((position + 1, False))
        trial = chosen + [pool[position]]
        try:
            hull = convex_hull(trial, d, k=k, embed=True)
        except LatticeError:
            continue
        if len(hull.vertices) != len(trial):
            continue
        chosen.append(pool[position])
        stack.append((None, True))
        stack.append((position + 1, False))
        if not hull.is_full_dimensional or len(trial) < target + 1:
            continue
        digest = points_digest(trial, d)
        if digest in seen:
            continue
        value, _ = diameter(hull)
        if value >= target and (not conditions or meets_ceiling_conditions(hull)):
            return make_certificate(hull, canonical=True)
        seen.add(digest)
    return None


def pruned_search(d, k, target, node_budget=NODE_BUDGET, time_budget=TIME_BUDGET, seen=None):
    """Look for a lattice (d,k)-polytope of diameter at least `target`.

    In the plane the exact enumeration decides. From d = 3 on, generator subsets of
    H1(d,2) are tried first, then point sets are grown from antipodal pairs (u, k-u).
    When `target` reaches the upper bound the growth also prunes on the conditions every
    polytope attaining that bound satisfies, and an exhausted outcome only refutes the bound.
    `seen` collects the canonical digests of evaluated point sets that did not qualify and may be
    pre-filled to resume.
    """
    if target < 1:
        raise InvalidParameterError(f'target must be positive, got {target}')
    if d < 1 or k < 1:
        raise InvalidParameterError(f'd and k must be positive, got d={d}, k={k}')
    if d > SEARCH_MAX_DIMENSION:
        raise PreconditionError(f'pruned search covers d <= {SEARCH_MAX_DIMENSION}, got d={d}')
    seen = set() if seen is None else seen
    ceiling = upper_bound(d, k)[0]

    if d == 1:
        if target > 1:
            return SearchOutcome(Outcome.EXHAUSTED, d, k, target, assumptions=(UPPER_BOUND,))
        return SearchOutcome(Outcome.FOUND, d, k, target, certificate=make_certificate(convex_hull([(0,), (k,)], 1, k=k)))
    if d == 2 and k <= EDGE_MAX_K:
        try:
            value, certificates = enumerate_max_diameter_2d(k, node_budget=node_budget)
        except BudgetExceededError as exc:
            return SearchOutcome(Outcome.BUDGET_EXCEEDED, d, k, target, explored=exc.explored or 0)
        if value >= target:
            return SearchOutcome(Outcome.FOUND, d, k, target, certificate=certificates[0])
        return SearchOutcome(Outcome.EXHAUSTED, d, k, target, assumptions=(EXHAUSTIVE_2D,))
    if target > ceiling:
        return SearchOutcome(Outcome.EXHAUSTED, d, k, target, assumptions=(UPPER_BOUND,))
    if d == 2:
        return SearchOutcome(Outcome.BUDGET_EXCEEDED, d, k, target)

    budget = _Budget(node_budget, time_budget)
    if k <= 2 * d - 1 and target <= conjecture_value(d, k):
        try:
            found = subset_search(d, k, target, node_budget=node_budget, verify=False)
        except BudgetExceededError as exc:
            logger.info('generator subsets for (%d,%d) ran out of budget: %s', d, k, exc)
            found = None
        if found is not None:
            zonotope = zonotope_vertices(found)
            polytope = convex_hull(zonotope.vertices, d, k=k)
            return SearchOutcome(Outcome.FOUND, d, k, target, certificate=make_certificate(polytope, canonical=True), notes={'generators': found.vectors})

    conditions = target >= ceiling
    section_diameter = delta_exact(d - 1, k) if conditions else None
    if conditions:
        assumptions = (ANTIPODAL,) + ((SECTIONS,) if section_diameter is not None else ())
    else:
        assumptions = (ANTIPODAL_SCAFFOLD,)
    try:
        for u, v in _antipodal_seeds(d, k):
            logger.debug('growing from seed pair %s, %s', u, v)
            certificate = _grow(d, k, target, u, v, section_diameter, seen, budget, conditions=conditions)
            if certificate is not None:
                return SearchOutcome(Outcome.FOUND, d, k, target, certificate=certificate, explored=budget.spent)
    except BudgetExceededError as exc:
        logger.info('pruned search (%d,%d) target %d: %s', d, k, target, exc)
        return SearchOutcome(Outcome.BUDGET_EXCEEDED, d, k, target, assumptions=assumptions, conditions_used=conditions, explored=budget.spent)
    return SearchOutcome(
        Outcome.EXHAUSTED, d, k, target, assumptions=assumptions, conditions_used=conditions, explored=budget.spent
    )
