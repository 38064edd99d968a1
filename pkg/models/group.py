"""Finitely generated abelian groups.

Represents G = Z^m + Z_{q_1} + ... + Z_{q_l} in normal form, its elements, and
symmetric generating multisets. Generation is decided with the Smith normal form
of the presentation matrix [S columns | q_i torsion columns].
"""

from collections import Counter
from dataclasses import dataclass
import logging

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from exceptions import GroupError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class GroupElement:
    free: tuple
    torsion: tuple = ()

    def encode(self):
        """Text encoding `"f1,f2|t1"` used by boundary-value files."""
        return ','.join(map(str, self.free)) + '|' + ','.join(map(str, self.torsion))

    def to_dict(self):
        return {'free': list(self.free), 'torsion': list(self.torsion)}

    def __repr__(self):
        return f'<{self.encode()}>'


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int
    torsion_orders: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'torsion_orders', tuple(int(q) for q in self.torsion_orders))
        if self.free_rank < 0:
            raise GroupError(f"free rank must be nonnegative, got {self.free_rank}")
        for q in self.torsion_orders:
            if q < 2:
                raise GroupError(f"torsion order must be >= 2, got {q}")
        if self.free_rank + len(self.torsion_orders) == 0:
            raise GroupError("trivial group")

    @property
    def torsion_count(self):
        return len(self.torsion_orders)

    @property
    def torsion_size(self):
        size = 1
        for q in self.torsion_orders:
            size *= q
        return size

    @property
    def is_torsion_free(self):
        return not self.torsion_orders

    def element(self, free=(), torsion=()):
        """Build an element, reducing torsion coordinates mod q_i."""
        free = tuple(int(a) for a in free)
        torsion = tuple(int(t) for t in torsion) or (0,) * self.torsion_count
        if len(free) != self.free_rank or len(torsion) != self.torsion_count:
            raise GroupError(
                f"element ({free}, {torsion}) does not fit Z^{self.free_rank} "
                f"with torsion {list(self.torsion_orders)}"
            )
        return GroupElement(free, tuple(t % q for t, q in zip(torsion, self.torsion_orders)))

    def decode(self, text):
        free_text, _, torsion_text = text.partition('|')
        try:
            free = [int(a) for a in free_text.split(',') if a.strip()]
            torsion = [int(t) for t in torsion_text.split(',') if t.strip()]
        except ValueError as e:
            raise GroupError(f"cannot decode group element {text!r}: {e}") from e
        return self.element(free, torsion)

    def zero(self):
        return GroupElement((0,) * self.free_rank, (0,) * self.torsion_count)

    def add(self, x, y):
        return GroupElement(
            tuple(a + b for a, b in zip(x.free, y.free)),
            tuple((a + b) % q for a, b, q in zip(x.torsion, y.torsion, self.torsion_orders)),
        )

    def neg(self, x):
        return GroupElement(
            tuple(-a for a in x.free),
            tuple(-t % q for t, q in zip(x.torsion, self.torsion_orders)),
        )

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def contains(self, x):
        return (
            len(x.free) == self.free_rank
            and len(x.torsion) == self.torsion_count
            and all(0 <= t < q for t, q in zip(x.torsion, self.torsion_orders))
        )

    def unit(self, i):
        """e_{i+1} for i < m, otherwise the torsion unit w_{i-m+1}."""
        free = [0] * self.free_rank
        torsion = [0] * self.torsion_count
        if i < self.free_rank:
            free[i] = 1
        else:
            torsion[i - self.free_rank] = 1
        return self.element(free, torsion)

    def describe(self):
        parts = []
        if self.free_rank:
            parts.append('Z' if self.free_rank == 1 else f'Z^{self.free_rank}')
        parts.extend(f'Z_{q}' for q in self.torsion_orders)
        return '+'.join(parts)

    def to_dict(self):
        return {'m': self.free_rank, 'torsion': list(self.torsion_orders)}


def make_group(free_rank, torsion_orders=()):
    """Z^free_rank + Z_{q_1} + ... ; orders need not be prime powers."""
    return AbelianGroup(int(free_rank), tuple(torsion_orders))


@dataclass(frozen=True)
class GeneratingSet:
    """Ordered multiset of group elements; duplicates and the zero element are allowed."""

    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, 'elements', tuple(self.elements))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @classmethod
    def from_half(cls, g, half):
        """s_1..s_l' followed by their negations, so s_i = -s_{i+l'}."""
        half = tuple(half)
        return cls(half + tuple(g.neg(x) for x in half))

    def is_symmetric(self, g):
        return Counter(self.elements) == Counter(g.neg(x) for x in self.elements)

    def unpaired_index(self, g):
        """Index of the first element whose negation is missing from the multiset, or None."""
        pool = Counter(self.elements)
        for i, x in enumerate(self.elements):
            if pool[x] == 0:
                continue
            pool[x] -= 1
            partner = g.neg(x)
            if pool[partner] == 0:
                return i
            pool[partner] -= 1
        return None

    def paired(self, g):
        """Reorder a symmetric multiset into the s_i = -s_{i+l'} convention."""
        pool = Counter(self.elements)
        half = []
        for i, x in enumerate(self.elements):
            if pool[x] == 0:
                continue
            pool[x] -= 1
            partner = g.neg(x)
            if pool[partner] == 0:
                raise GroupError(f"generating set is not symmetric: {x!r} at {i} has no partner")
            pool[partner] -= 1
            half.append(x)
        return GeneratingSet.from_half(g, half)

    def steps(self, g):
        """Non-zero elements with multiplicity: the edges leaving a vertex (self-loops dropped)."""
        zero = g.zero()
        return [x for x in self.elements if x != zero]

    def distinct_steps(self, g):
        """Distinct non-zero elements in first-appearance order (metric adjacency)."""
        return list(dict.fromkeys(self.steps(g)))


def canonical_generating_set(g):
    """S^0 = {e_1..e_m, w_1..w_l, -e_1..-e_m, -w_1..-w_l}."""
    return GeneratingSet.from_half(g, [g.unit(i) for i in range(g.free_rank + g.torsion_count)])


@dataclass(frozen=True)
class ValidationReport:
    symmetric: bool
    generates: bool

    @property
    def ok(self):
        return self.symmetric and self.generates

    def to_dict(self):
        return {'symmetric': self.symmetric, 'generates': self.generates}


def _check_members(g, s):
    if len(s) == 0:
        raise GroupError("generating set is empty")
    for i, x in enumerate(s):
        if not g.contains(x):
            raise GroupError(f"generator {i} ({x!r}) is not an element of {g.describe()}")


def generates(g, s):
    """Does S generate G? All invariant factors of [S | q_i columns] must equal 1."""
    rows = g.free_rank + g.torsion_count
    columns = [list(x.free) + list(x.torsion) for x in s]
    for i, q in enumerate(g.torsion_orders):
        column = [0] * rows
        column[g.free_rank + i] = q
        columns.append(column)
    if all(a == 0 for column in columns for a in column):
        return False
    presentation = Matrix(columns).T
    factors = invariant_factors(presentation, domain=ZZ)
    return len(factors) == rows and all(abs(int(d)) == 1 for d in factors)


def validate_generating_set(g, s):
    _check_members(g, s)
    report = ValidationReport(symmetric=s.is_symmetric(g), generates=generates(g, s))
    if not report.ok:
        logger.debug(f"generating set rejected for {g.describe()}: {report.to_dict()}")
    return report


def require_valid(g, s):
    """Raise GroupError unless S is a symmetric generating set of G."""
    report = validate_generating_set(g, s)
    if not report.symmetric:
        raise GroupError(f"generating set is not symmetric (S != -S) in {g.describe()}")
    if not report.generates:
        raise GroupError(f"generating set does not generate {g.describe()}")
    return report


def project_to_free_part(g, s):
    """pi_{G_1} S: drop torsion coordinates, keeping the multiset (zeros included)."""
    return GeneratingSet(tuple(GroupElement(x.free, ()) for x in s))


def drop_first_coordinate(g, s):
    """Z^m -> Z^{m-1}, x -> (x_2..x_m); returns the smaller group and the projected multiset."""
    if not g.is_torsion_free or g.free_rank < 2:
        raise GroupError(f"cannot drop a coordinate of {g.describe()}")
    smaller = AbelianGroup(g.free_rank - 1, ())
    return smaller, GeneratingSet(tuple(GroupElement(x.free[1:], ()) for x in s))
