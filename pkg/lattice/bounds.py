"""
Known values and closed-form bounds for delta(d,k), the largest diameter of a lattice (d,k)-polytope.
"""

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

from .exceptions import BoundsMismatchError, InvalidParameterError
from .zonotopes import planar_subset_generators

REPORT_LIMIT = 50

# delta(2,k) for k = 1..9
PLANAR_ROW = (2, 3, 4, 4, 5, 6, 6, 7, 8)


class Provenance(enum.Enum):
    NADDEF = 'Naddef'
    KLEINSCHMIDT_ONN = 'KleinschmidtOnn'
    DEL_PIA_MICHINI = 'DelPiaMichini'
    THEOREM_1 = 'Theorem1'
    THEOREM_2I = 'Theorem2i'
    THEOREM_2II = 'Theorem2ii'
    THEOREM_2III = 'Theorem2iii'
    CONJECTURE_LB = 'ConjectureLB'
    TABLE_1 = 'Table1'
    TWO_DIM_EXACT = 'TwoDimExact'

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class BoundRecord:
    d: int
    k: int
    lower: int
    lower_provenance: Provenance
    upper: int
    upper_provenance: Provenance
    exact: int | None = None
    exact_provenance: Provenance | None = None

    def __post_init__(self):
        if self.lower > self.upper:
            raise BoundsMismatchError(f'delta({self.d},{self.k}): lower bound {self.lower} exceeds upper bound {self.upper}')
        if self.exact is not None and not self.lower == self.upper == self.exact:
            raise BoundsMismatchError(f'delta({self.d},{self.k}) = {self.exact} but bounds are [{self.lower}, {self.upper}]')

    @property
    def settled(self):
        return self.lower == self.upper

    def __str__(self):
        if self.settled:
            return f'delta({self.d},{self.k}) = {self.lower}'
        return f'{self.lower} <= delta({self.d},{self.k}) <= {self.upper}'


def _check(d, k):
    if d < 1 or k < 1:
        raise InvalidParameterError(f'd and k must be positive, got d={d}, k={k}')


def exact_value(d, k):
    """(value, provenance) of a known delta(d,k), or None."""
    _check(d, k)
    if k == 1:
        return d, Provenance.NADDEF
    if k == 2:
        return 3 * d // 2, Provenance.DEL_PIA_MICHINI
    if d == 1:
        return 1, Provenance.TABLE_1
    if d == 2 and k <= len(PLANAR_ROW):
        return PLANAR_ROW[k - 1], Provenance.TABLE_1
    if (d, k) == (3, 3):
        return 6, Provenance.TABLE_1
    if (d, k) == (4, 3):
        return 8, Provenance.TABLE_1
    return None


def delta_exact(d, k):
    known = exact_value(d, k)
    return known[0] if known else None


def conjecture_value(d, k):
    return (k + 1) * d // 2


@lru_cache(maxsize=None)
def planar_subset_bound(k):
    """Diameter of the largest zonotope of planar primitive generators inside [0,k]^2."""
    _check(2, k)
    return len(planar_subset_generators(k))


def lower_candidates(d, k):
    _check(d, k)
    candidates = []
    if k <= 2 * d - 1:
        candidates.append((conjecture_value(d, k), Provenance.CONJECTURE_LB))
    candidates.append((d, Provenance.NADDEF))
    known = exact_value(d, k)
    if known:
        candidates.append(known)
    if d == 2:
        candidates.append((planar_subset_bound(k), Provenance.TWO_DIM_EXACT))
    return candidates


def upper_formulas(d, k):
    _check(d, k)
    candidates = [(k * d, Provenance.KLEINSCHMIDT_ONN)]
    if k >= 2:
        candidates.append((k * d - math.ceil(d / 2), Provenance.DEL_PIA_MICHINI))
    if k >= 3:
        candidates.append((k * d - math.ceil(2 * d / 3), Provenance.THEOREM_1))
    if k >= 4:
        candidates.append((k * d - math.ceil(2 * d / 3) - (k - 2), Provenance.THEOREM_2I))
    if k == 3 and d % 3 != 2:
        candidates.append((7 * d // 3 - 1, Provenance.THEOREM_2II))
    if k == 3 and d % 3 == 2:
        candidates.append((7 * d // 3, Provenance.THEOREM_2III))
    return candidates


def upper_candidates(d, k):
    candidates = upper_formulas(d, k)
    known = exact_value(d, k)
    if known:
        candidates.append(known)
    return candidates


def lower_bound(d, k):
    """Best lower bound; ties go to the earliest candidate (conjecture formula, floor d, exact value, planar witness)."""
    candidates = lower_candidates(d, k)
    best = max(value for value, _ in candidates)
    return next(c for c in candidates if c[0] == best)


def upper_bound(d, k):
    """Best upper bound; among tied formulas the latest, most refined one wins and the
    exact value is named only when no formula reaches it."""
    formulas = upper_formulas(d, k)
    best = min(value for value, _ in upper_candidates(d, k))
    tied = [c for c in formulas if c[0] == best]
    return tied[-1] if tied else (best, exact_value(d, k)[1])


def box_lemma_bound(d, k):
    """kd - (k - 1): the box restriction applied to d - 1 coordinates with delta(1,k) = 1."""
    _check(d, k)
    return k * d - (k - 1)


def formula_values(d, k):
    """Every applicable upper-bound formula as (name, value); known exact values are reported apart."""
    values = [(str(provenance), value) for value, provenance in upper_formulas(d, k)]
    values.append(('BoxLemma', box_lemma_bound(d, k)))
    return values


def conjecture_compatible(d, k):
    """Whether the conjectured value fits under the proven upper bound (True when the conjecture does not apply)."""
    if not 3 <= k <= 2 * d - 1:
        return True
    return conjecture_value(d, k) <= upper_bound(d, k)[0]


def bound_record(d, k):
    lower, lower_provenance = lower_bound(d, k)
    upper, upper_provenance = upper_bound(d, k)
    known = exact_value(d, k)
    return BoundRecord(
        d=d,
        k=k,
        lower=lower,
        lower_provenance=lower_provenance,
        upper=upper,
        upper_provenance=upper_provenance,
        exact=known[0] if known else None,
        exact_provenance=known[1] if known else None,
    )


def bounds_report(d_max, k_max):
    if not (1 <= d_max <= REPORT_LIMIT and 1 <= k_max <= REPORT_LIMIT):
        raise InvalidParameterError(f'report limits must lie in 1..{REPORT_LIMIT}')
    return [bound_record(d, k) for d in range(1, d_max + 1) for k in range(1, k_max + 1)]
