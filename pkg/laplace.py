"""The Laplacian L^S, its powers and partial differences as exact linear maps.

Operators act on P^k_m (x) F(G_2) with exact rational coefficients; matrices are
`sympy.Matrix` objects and kernels come back in reduced row-echelon form with respect to
the graded-lex basis, so bases are reproducible term for term.

Codomain rule: on a torsion-free group L^{n,S} maps P^k into P^{max(k-2n, 0)}. With torsion
present the codomain is P^k (x) F(G_2) itself, since slices mix, and the degree drop is
checked only on torsion-constant inputs.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import floor
import logging

from sympy import Matrix, Rational, zeros

from exceptions import ConsistencyError, GroupError, HarmonicityError
from models.group import make_group, project_to_free_part, require_valid
from models.polynomial import (
    PolyTorsionFunction,
    dim_n_harmonic,
    dim_polynomials,
    enumerate_basis,
    partial_difference,
)

logger = logging.getLogger(__name__)


def _to_sympy(c):
    return Rational(c.numerator, c.denominator)


def _to_fraction(c):
    c = Rational(c)
    return Fraction(int(c.p), int(c.q))


@dataclass(frozen=True)
class LinearMap:
    domain: object  # MonomialBasis
    codomain: object  # MonomialBasis
    matrix: Matrix  # codomain x domain

    @property
    def shape(self):
        return self.matrix.shape

    def rank(self):
        if 0 in self.matrix.shape:
            return 0
        return len(self.matrix.rref()[1])

    def nullity(self):
        return len(self.domain) - self.rank()

    def then(self, other):
        """other after self."""
        if other.domain != self.codomain or len(other.domain) != len(self.codomain):
            raise ConsistencyError("composition across mismatched bases")
        return LinearMap(self.domain, other.codomain, other.matrix * self.matrix)

    def apply(self, f):
        vector = Matrix([_to_sympy(c) for c in f.coordinates(self.domain)])
        image = self.matrix * vector
        return PolyTorsionFunction.from_coordinates(self.codomain, [_to_fraction(c) for c in image])


@dataclass(frozen=True)
class KernelBasis:
    functions: tuple
    coefficient_matrix: Matrix  # one row per basis function, in rref
    domain: object

    @property
    def dimension(self):
        return len(self.functions)

    def is_torsion_constant(self):
        return all(f.is_torsion_constant() for f in self.functions)

    def recheck(self, operator):
        """Does `operator` (function -> function) annihilate every basis element?"""
        return all(operator(f).is_zero() for f in self.functions)

    def to_dict(self):
        return [f.to_dict() for f in self.functions]


def apply_laplacian(g, s, f, n=1):
    """L^{n,S} f with L^S f = sum_{s in S} (f(. + s) - f); multiplicities count, 0 contributes nothing."""
    if n < 1:
        raise GroupError(f"order must be positive, got {n}")
    steps = s.steps(g)
    for _ in range(n):
        image = PolyTorsionFunction.zero(f.free_rank, f.torsion_orders)
        for step in steps:
            image = image + partial_difference(f, step)
        f = image
    return f


def _codomain(g, k, n, budget):
    if g.is_torsion_free:
        return enumerate_basis(g.free_rank, max(k - 2 * n, 0), (), budget=budget)
    return enumerate_basis(g.free_rank, k, g.torsion_orders, budget=budget)


def _matrix_from_columns(domain, codomain, columns):
    matrix = zeros(len(codomain), len(domain))
    for j, image in enumerate(columns):
        if not image.fits(codomain):
            raise ConsistencyError(
                f"image of basis element {domain.elements[j]} leaves the declared codomain; "
                "is the generating set symmetric?"
            )
        for key, c in image.terms.items():
            matrix[codomain.index[key], j] = _to_sympy(c)
    return matrix


def assemble_matrix(g, s, k, n=1, budget=None):
    """Matrix of L^{n,S} on P^k_m (x) F(G_2), column j = image of basis element j."""
    domain = enumerate_basis(g.free_rank, k, g.torsion_orders, budget=budget)
    codomain = _codomain(g, k, n, budget)
    columns = [
        apply_laplacian(g, s, PolyTorsionFunction(g.free_rank, g.torsion_orders, {key: 1}), n)
        for key in domain
    ]
    if not g.is_torsion_free:
        alphas = list(dict.fromkeys(alpha for alpha, _ in domain))
        for alpha in alphas:
            image = apply_laplacian(g, s, PolyTorsionFunction.monomial(g.free_rank, g.torsion_orders, alpha), n)
            if not image.is_zero() and image.degree() > sum(alpha) - 2 * n:
                raise ConsistencyError(f"L^{n} does not lower the degree of torsion-constant x^{alpha}")
    matrix = _matrix_from_columns(domain, codomain, columns)
    logger.debug(f"assembled L^{n} on {g.describe()} k={k}: {matrix.rows}x{matrix.cols}")
    return LinearMap(domain, codomain, matrix)


def apply_partial_difference_map(g, k, direction, budget=None):
    """Matrix of delta_v on P^k_m (x) F(G_2); lands in degree k-1 when v has no torsion part."""
    domain = enumerate_basis(g.free_rank, k, g.torsion_orders, budget=budget)
    if any(direction.torsion):
        codomain = domain
    else:
        codomain = enumerate_basis(g.free_rank, k - 1, g.torsion_orders, budget=budget)
    columns = [
        partial_difference(PolyTorsionFunction(g.free_rank, g.torsion_orders, {key: 1}), direction)
        for key in domain
    ]
    return LinearMap(domain, codomain, _matrix_from_columns(domain, codomain, columns))


def kernel_basis(linear_map):
    """Canonical exact nullspace: rref rows of the nullspace, as functions."""
    domain = linear_map.domain
    size = len(domain)
    if size == 0:
        return KernelBasis((), zeros(0, 0), domain)
    if linear_map.matrix.rows == 0:
        vectors = [Matrix.eye(size)[:, j] for j in range(size)]
    else:
        vectors = linear_map.matrix.nullspace()
    if not vectors:
        return KernelBasis((), zeros(0, size), domain)
    reduced, pivots = Matrix.hstack(*vectors).T.rref()
    reduced = reduced[:len(pivots), :]
    functions = tuple(
        PolyTorsionFunction.from_coordinates(domain, [_to_fraction(c) for c in reduced.row(i)])
        for i in range(reduced.rows)
    )
    return KernelBasis(functions, reduced, domain)


def free_quotient(g, s):
    """(Z^m, pi_{G_1} S): the setting in which torsion-constant functions live."""
    return make_group(g.free_rank, ()), project_to_free_part(g, s)


def harmonic_polynomial_basis(g, s, k, budget=None):
    """D^k_{S,m}: discrete harmonic polynomials of degree <= k, computed on the free quotient."""
    free_group, free_set = free_quotient(g, s)
    return kernel_basis(assemble_matrix(free_group, free_set, k, 1, budget=budget))


def expected_dimension(m, k, n=1):
    """Closed form for dim H^{n,k}: 1 when m = 0 (constants), else the n-harmonic count."""
    if m == 0:
        return 1
    return dim_n_harmonic(m, k, n)


@dataclass
class DimensionReport:
    group: object
    degree: int
    order: int
    computed_dim: int
    expected_dim: int
    torsion_constant: bool
    surjective: object  # bool, or None when there is nothing to cover
    kernel: KernelBasis

    @property
    def matches(self):
        return self.computed_dim == self.expected_dim

    def to_dict(self, with_basis=False):
        result = {
            'm': self.group.free_rank,
            'torsion': list(self.group.torsion_orders),
            'degree': self.degree,
            'order': self.order,
            'computed_dim': self.computed_dim,
            'expected_dim': self.expected_dim,
            'torsion_constant': self.torsion_constant,
            'surjective': self.surjective,
        }
        if with_basis:
            result['basis'] = self.kernel.to_dict()
        return result


def surjectivity(g, s, k, n=1, budget=None, linear_map=None):
    """Is L^{n, pi S} : P^k_m -> P^{k-2n}_m onto? None when k < 2n or m = 0."""
    if k - 2 * n < 0 or g.free_rank == 0:
        return None
    if linear_map is None or not g.is_torsion_free:
        free_group, free_set = free_quotient(g, s)
        linear_map = assemble_matrix(free_group, free_set, k, n, budget=budget)
    return linear_map.rank() == dim_polynomials(g.free_rank, k - 2 * n)


def harmonic_space_dimension(g, s, d, n=1, budget=None):
    """Nullity of L^{n,S} on P^[d] (x) F(G_2) against the closed form."""
    if d < 0:
        raise GroupError(f"growth order must be nonnegative, got {d}")
    require_valid(g, s)
    k = floor(d)
    linear_map = assemble_matrix(g, s, k, n, budget=budget)
    kernel = kernel_basis(linear_map)
    report = DimensionReport(
        group=g,
        degree=k,
        order=n,
        computed_dim=kernel.dimension,
        expected_dim=expected_dimension(g.free_rank, k, n),
        torsion_constant=kernel.is_torsion_constant(),
        surjective=surjectivity(g, s, k, n, budget=budget, linear_map=linear_map),
        kernel=kernel,
    )
    if not report.matches:
        logger.error(
            f"dimension mismatch on {g.describe()} k={k} n={n}: "
            f"computed {report.computed_dim}, expected {report.expected_dim}"
        )
    return report


def partial_difference_on_harmonic(g, s, k, budget=None):
    """Rank of delta_{e_1} : D^k_{S,m} -> D^{k-1}_{S,m} (torsion-free setting).

    Returns (rank, dim D^k, dim D^{k-1}); raises ConsistencyError if an image is not harmonic.
    """
    free_group, free_set = free_quotient(g, s)
    upper = harmonic_polynomial_basis(g, s, k, budget=budget)
    lower = harmonic_polynomial_basis(g, s, k - 1, budget=budget) if k >= 1 else None
    target = enumerate_basis(free_group.free_rank, k - 1, (), budget=budget)
    e1 = free_group.unit(0)
    images = []
    for f in upper.functions:
        image = partial_difference(f, e1)
        if not apply_laplacian(free_group, free_set, image).is_zero():
            raise ConsistencyError("delta_1 of a harmonic polynomial is not harmonic")
        images.append([_to_sympy(c) for c in image.coordinates(target)])
    if not images or len(target) == 0:
        rank = 0
    else:
        rank = len(Matrix(images).T.rref()[1])
    return rank, upper.dimension, lower.dimension if lower is not None else 0


def gradient_squared(g, s, f, x):
    """|grad f|^2(x) = sum_{s in S} (f(x+s) - f(x))^2 over a value table `f`."""
    fx = f[x]
    return sum(((f[g.add(x, step)] - fx) ** 2 for step in s.steps(g)), 0 * fx)


def laplacian_at(g, s, f, x):
    fx = f[x]
    return sum((f[g.add(x, step)] - fx for step in s.steps(g)), 0 * fx)


def bochner_check(g, s, f, x, tolerance=0):
    """L^S |grad f|^2 (x) for f harmonic on the closed unit ball around x.

    `f` is any mapping from group elements to values (a BallFunction, a dict) and must be
    defined on B_2(x). Harmonicity is verified at x and at every neighbour; with float
    values `tolerance` bounds the admissible residual.
    """
    steps = s.steps(g)
    unit_ball = [x] + [g.add(x, step) for step in steps]
    for y in unit_ball:
        for z in [y] + [g.add(y, step) for step in steps]:
            if z not in f:
                raise HarmonicityError(f"function undefined at {z!r}, needed on B_2({x!r})")
        residual = laplacian_at(g, s, f, y)
        if abs(residual) > tolerance:
            raise HarmonicityError(f"L f({y!r}) = {residual}, function not harmonic on B_1({x!r})")
    energy = {y: gradient_squared(g, s, f, y) for y in unit_ball}
    return laplacian_at(g, s, energy, x)


def commutes_with_laplacian(g, s, k, direction, budget=None):
    """delta_v L^S = L^S delta_v on every basis element of P^k_m (x) F(G_2)."""
    for key in enumerate_basis(g.free_rank, k, g.torsion_orders, budget=budget):
        f = PolyTorsionFunction(g.free_rank, g.torsion_orders, {key: 1})
        left = partial_difference(apply_laplacian(g, s, f), direction)
        right = apply_laplacian(g, s, partial_difference(f, direction))
        if left != right:
            return False
    return True

