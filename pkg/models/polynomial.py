"""Polynomial-growth candidate functions.

A `PolyTorsionFunction` is a polynomial in the m free coordinates for every torsion
component, i.e. an element of P^k_m (x) F(G_2). Coefficients are exact rationals keyed by
(multi-index, torsion element) and stored sparsely. Bases are ordered graded-lex on the
multi-index (x before y, x^2 before xy) and then lexicographically on the torsion part.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import comb, inf
import logging

from config import Config
from exceptions import BudgetExceededError, GroupError

logger = logging.getLogger(__name__)


def monomials_of_degree(m, degree):
    """Multi-indices of total degree `degree` in m variables, descending lexicographic."""
    if m == 0:
        return [()] if degree == 0 else []
    if m == 1:
        return [(degree,)]
    result = []
    for first in range(degree, -1, -1):
        result.extend((first,) + rest for rest in monomials_of_degree(m - 1, degree - first))
    return result


def monomial_count(m, i):
    """Number of monomials of degree exactly i in m variables: C(m+i-1, i)."""
    if i < 0:
        return 0
    if m == 0:
        return 1 if i == 0 else 0
    return comb(m + i - 1, i)


def torsion_components(torsion_orders):
    return [tuple(t) for t in product(*(range(q) for q in torsion_orders))]


@dataclass(frozen=True)
class MonomialBasis:
    free_rank: int
    max_degree: int
    torsion_orders: tuple = ()
    elements: tuple = field(default=(), repr=False, compare=False)

    @cached_property
    def index(self):
        return {key: i for i, key in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, key):
        return key in self.index


def enumerate_basis(m, k, torsion_orders=(), budget=None):
    """Ordered basis of P^k_m (x) F(G_2); a negative k gives the zero space."""
    if m < 0:
        raise GroupError(f"free rank must be nonnegative, got {m}")
    torsion_orders = tuple(torsion_orders)
    budget = Config.BASIS_BUDGET if budget is None else budget
    torsion = torsion_components(torsion_orders)
    size = sum(monomial_count(m, i) for i in range(k + 1)) * len(torsion)
    if size > budget:
        raise BudgetExceededError(f"basis of size {size} exceeds budget {budget} (m={m}, k={k})")
    alphas = [alpha for degree in range(k + 1) for alpha in monomials_of_degree(m, degree)]
    elements = tuple((alpha, t) for alpha in alphas for t in torsion)
    return MonomialBasis(m, k, torsion_orders, elements)


def _as_fraction(value):
    return value if isinstance(value, Fraction) else Fraction(value)


class PolyTorsionFunction:
    """Function on G = Z^m + G_2 which is a polynomial in the free part on every torsion slice."""

    __slots__ = ('free_rank', 'torsion_orders', '_terms')

    def __init__(self, free_rank, torsion_orders=(), terms=None):
        self.free_rank = free_rank
        self.torsion_orders = tuple(torsion_orders)
        self._terms = {}
        for (alpha, t), c in (terms or {}).items():
            c = _as_fraction(c)
            if c:
                self._terms[(tuple(alpha), tuple(t))] = c

    # -- construction -----------------------------------------------------
    @classmethod
    def zero(cls, free_rank, torsion_orders=()):
        return cls(free_rank, torsion_orders)

    @classmethod
    def monomial(cls, free_rank, torsion_orders, alpha, torsion=None, coefficient=1):
        """c * x^alpha on slice `torsion`, or on every slice when torsion is None."""
        slices = torsion_components(torsion_orders) if torsion is None else [tuple(torsion)]
        return cls(free_rank, torsion_orders, {(tuple(alpha), t): coefficient for t in slices})

    @classmethod
    def from_polynomial(cls, free_rank, torsion_orders, coefficients):
        """Torsion-constant function from {alpha: coefficient}."""
        terms = {}
        for t in torsion_components(torsion_orders):
            for alpha, c in coefficients.items():
                terms[(tuple(alpha), t)] = c
        return cls(free_rank, torsion_orders, terms)

    @classmethod
    def from_coordinates(cls, basis, vector):
        terms = {key: c for key, c in zip(basis.elements, vector) if c}
        return cls(basis.free_rank, basis.torsion_orders, terms)

    # -- access -----------------------------------------------------------
    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self):
        return not self._terms

    def degree(self):
        """Largest |alpha| with a nonzero coefficient; -inf for the zero function."""
        if not self._terms:
            return -inf
        return max(sum(alpha) for alpha, _ in self._terms)

    def coordinates(self, basis):
        """Coefficient vector in `basis`; raises KeyError if a term falls outside it."""
        vector = [Fraction(0)] * len(basis)
        for key, c in self._terms.items():
            vector[basis.index[key]] = c
        return vector

    def fits(self, basis):
        return all(key in basis.index for key in self._terms)

    def slice(self, torsion):
        torsion = tuple(torsion)
        return {alpha: c for (alpha, t), c in self._terms.items() if t == torsion}

    def is_torsion_constant(self):
        slices = [self.slice(t) for t in torsion_components(self.torsion_orders)]
        return all(s == slices[0] for s in slices[1:])

    # -- arithmetic -------------------------------------------------------
    def _check_compatible(self, other):
        if (self.free_rank, self.torsion_orders) != (other.free_rank, other.torsion_orders):
            raise GroupError("functions live on different groups")

    def __add__(self, other):
        self._check_compatible(other)
        terms = dict(self._terms)
        for key, c in other._terms.items():
            terms[key] = terms.get(key, 0) + c
        return PolyTorsionFunction(self.free_rank, self.torsion_orders, terms)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        factor = _as_fraction(factor)
        return PolyTorsionFunction(
            self.free_rank, self.torsion_orders, {key: c * factor for key, c in self._terms.items()}
        )

    def __mul__(self, factor):
        return self.scale(factor)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PolyTorsionFunction):
            return NotImplemented
        return (
            self.free_rank == other.free_rank
            and self.torsion_orders == other.torsion_orders
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.free_rank, self.torsion_orders, frozenset(self._terms.items())))

    # -- presentation -----------------------------------------------------
    def sorted_terms(self):
        def key(item):
            (alpha, t), _ = item
            return (sum(alpha), tuple(-a for a in alpha), t)
        return sorted(self._terms.items(), key=key)

    def to_dict(self):
        return [
            {'alpha': list(alpha), 'torsion': list(t), 'num': str(c.numerator), 'den': str(c.denominator)}
            for (alpha, t), c in self.sorted_terms()
        ]

    @classmethod
    def from_dict(cls, free_rank, torsion_orders, entries):
        terms = {}
        for entry in entries:
            key = (tuple(entry['alpha']), tuple(entry['torsion']))
            terms[key] = Fraction(int(entry['num']), int(entry['den']))
        return cls(free_rank, torsion_orders, terms)

    def __str__(self):
        if not self._terms:
            return '0'
        names = ['x', 'y', 'z'] if self.free_rank <= 3 else [f'x{i + 1}' for i in range(self.free_rank)]
        parts = []
        for (alpha, t), c in self.sorted_terms():
            factors = [n if a == 1 else f'{n}^{a}' for n, a in zip(names, alpha) if a]
            monomial = '*'.join(factors)
            if not monomial:
                text = str(c)
            elif c in (1, -1):
                text = monomial if c == 1 else '-' + monomial
            else:
                text = f'{c}*{monomial}'
            if self.torsion_orders and not self.is_torsion_constant():
                text += f'[t={list(t)}]'
            parts.append(text)
        return ' + '.join(parts).replace('+ -', '- ')

    def __repr__(self):
        return f'<PolyTorsionFunction {self}>'


def _expand_shift(alpha, offset):
    """Terms of prod_i (x_i + offset_i)^alpha_i as {beta: integer coefficient}."""
    factors = []
    for a, s in zip(alpha, offset):
        factors.append([(j, comb(a, j) * s ** (a - j)) for j in range(a + 1)])
    expansion = {}
    for choice in product(*factors):
        beta = tuple(j for j, _ in choice)
        c = 1
        for _, weight in choice:
            c *= weight
        if c:
            expansion[beta] = expansion.get(beta, 0) + c
    return expansion


def shift(f, s):
    """(shift f)(x) = f(x + s): binomial expansion in the free part, slice t -> t - s_torsion."""
    if len(s.free) != f.free_rank or len(s.torsion) != len(f.torsion_orders):
        raise GroupError(f"shift {s!r} does not fit the function's group")
    terms = {}
    for (alpha, t), c in f._terms.items():
        target = tuple((a - b) % q for a, b, q in zip(t, s.torsion, f.torsion_orders))
        for beta, weight in _expand_shift(alpha, s.free).items():
            key = (beta, target)
            terms[key] = terms.get(key, 0) + c * weight
    return PolyTorsionFunction(f.free_rank, f.torsion_orders, terms)


def partial_difference(f, s):
    """delta_s f(x) = f(x + s) - f(x)."""
    return shift(f, s) - f


def evaluate(f, x):
    """Exact value at a group element: the slice x.torsion evaluated at x.free."""
    total = Fraction(0)
    for (alpha, t), c in f._terms.items():
        if t != tuple(x.torsion):
            continue
        value = c
        for coordinate, a in zip(x.free, alpha):
            value *= coordinate ** a
        total += value
    return total


def dim_polynomials(m, k):
    """dim P^k_m = sum_{i<=k} C(m+i-1, i); zero for k < 0."""
    return sum(monomial_count(m, i) for i in range(k + 1))


def dim_harmonic_polynomials(m, k):
    """dim R^k_m = C(m+k-1, k) + C(m+k-2, k-1) for k >= 1, and 1 for k = 0."""
    if k < 0:
        return 0
    if k == 0:
        return 1
    return monomial_count(m, k) + monomial_count(m, k - 1)


def dim_n_harmonic(m, k, n):
    """sum_{i=max(k-2n+1, 0)}^{k} C(m+i-1, i): polynomials of degree <= k killed by L^n."""
    return sum(monomial_count(m, i) for i in range(max(k - 2 * n + 1, 0), k + 1))


def dim_reference(m, k):
    """(dim P^k_m, dim R^k_m) from the closed forms."""
    if m < 1 or k < 0:
        raise GroupError(f"dim_reference needs m >= 1 and k >= 0, got m={m}, k={k}")
    return dim_polynomials(m, k), dim_harmonic_polynomials(m, k)


def dim_recursions(m, k):
    """Check dim R^k_m = dim R^k_{m-1} + dim R^{k-1}_m and dim P^k_m = dim R^k_m + dim P^{k-2}_m.

    Returns a dict with one flag per identity, None where the identity does not apply
    (the R-recursion needs m >= 2 and k >= 1, the P-recursion needs k >= 2).
    """
    harmonic = None
    if m >= 2 and k >= 1:
        harmonic = dim_harmonic_polynomials(m, k) == (
            dim_harmonic_polynomials(m - 1, k) + dim_harmonic_polynomials(m, k - 1)
        )
    polynomial = None
    if k >= 2:
        polynomial = dim_polynomials(m, k) == dim_harmonic_polynomials(m, k) + dim_polynomials(m, k - 2)
    return {'harmonic': harmonic, 'polynomial': polynomial}
