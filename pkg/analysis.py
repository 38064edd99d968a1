"""Dirichlet problems on word-metric balls and the inequality measurement harness.

Harmonic functions on a ball are produced by solving degree * f(x) = sum_{s in S} f(x + s)
at every member with the boundary sphere pinned. Two modes:

- exact: rational sparse row reduction (sympy `DomainMatrix` over QQ), used when the
  boundary data are rational and the ball is at most `Config.EXACT_SOLVE_LIMIT` vertices;
- float: sparse LU (scipy `splu`), factored once per ball and reused for every trial,
  with the residual checked against `Config.FLOAT_RESIDUAL_TOL`.

The measurement functions never take the analytic constants as inputs: they report the
sup over seeded trials of the ratio each inequality bounds, per radius.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import logging
import math

import numpy as np
import pandas as pd
from scipy import sparse
from scipy.sparse.linalg import splu
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from cayley import ball as make_ball
from config import Config
from exceptions import ConsistencyError, GroupError
from models.ball import BallFunction

logger = logging.getLogger(__name__)

KINDS = ('harnack', 'gradient', 'poincare', 'caccioppoli', 'meanvalue', 'onesided')


def _is_rational(value):
    return isinstance(value, (Fraction, int)) and not isinstance(value, bool)


def _to_fraction(value):
    return Fraction(int(value.numerator), int(value.denominator))


class BallGeometry:
    """Index arrays for a ball and its boundary: neighbour table, distances, Laplacian blocks."""

    def __init__(self, g, s, ball):
        self.group = g
        self.generators = s
        self.ball = ball
        self.points = ball.closure()
        self.index = {x: i for i, x in enumerate(self.points)}
        self.interior_size = len(ball)
        self.distance = np.array([ball.distances.get(x, ball.radius + 1) for x in self.points])
        self.steps = s.steps(g)
        self.neighbors = np.full((len(self.points), len(self.steps)), -1, dtype=np.int64)
        for i, x in enumerate(self.points):
            for j, step in enumerate(self.steps):
                self.neighbors[i, j] = self.index.get(g.add(x, step), -1)
        self._lu = None
        self._blocks = None

    @property
    def boundary_size(self):
        return len(self.points) - self.interior_size

    @property
    def degree(self):
        return len(self.steps)

    def within(self, r):
        return np.flatnonzero(self.distance <= r)

    def coordinates(self):
        return np.array([x.free for x in self.points], dtype=float).reshape(len(self.points), -1)

    def tabulate(self, fn):
        """Values of a callable or mapping on every point; object dtype if exact."""
        values = [fn(x) if callable(fn) else fn[x] for x in self.points]
        if all(_is_rational(v) for v in values):
            return np.array([Fraction(v) for v in values], dtype=object)
        return np.array(values, dtype=float)

    # -- difference operators on value arrays ------------------------------
    def _neighbor_values(self, values, idx):
        nb = self.neighbors[idx]
        if (nb < 0).any():
            raise GroupError("difference operator needs values outside the ball")
        return values[nb]

    def gradient_squared(self, values, idx):
        diff = self._neighbor_values(values, idx) - values[idx][:, None]
        return (diff * diff).sum(axis=1)

    def laplacian(self, values, idx):
        return (self._neighbor_values(values, idx) - values[idx][:, None]).sum(axis=1)

    def edge_energy(self, values, r):
        """sum over ordered edges (x, x+s) with both ends in B_r of (f(x+s) - f(x))^2."""
        idx = self.within(r)
        nb = self.neighbors[idx]
        inside = (nb >= 0) & (self.distance[np.where(nb >= 0, nb, 0)] <= r)
        rows, cols = np.nonzero(inside)
        diff = values[nb[rows, cols]] - values[idx[rows]]
        return (diff * diff).sum()

    # -- Dirichlet solves ---------------------------------------------------
    def _check_solvable(self):
        if self.boundary_size == 0:
            raise GroupError("ball covers the whole group; the Dirichlet problem has no boundary")

    def _split(self):
        if self._blocks is None:
            n = self.interior_size
            rows = np.repeat(np.arange(n), self.degree)
            cols = self.neighbors[:n].ravel()
            adjacency = sparse.coo_matrix(
                (np.ones(len(rows)), (rows, cols)), shape=(n, len(self.points))
            ).tocsr()
            system = sparse.identity(n, format='csr') * self.degree - adjacency[:, :n]
            self._blocks = (system.tocsc(), adjacency[:, n:])
        return self._blocks

    def solve(self, boundary, tolerance=None):
        """Float solve; returns values on members followed by boundary."""
        self._check_solvable()
        tolerance = Config.FLOAT_RESIDUAL_TOL if tolerance is None else tolerance
        boundary = np.asarray(boundary, dtype=float)
        system, coupling = self._split()
        if self._lu is None:
            self._lu = splu(system)
        rhs = coupling @ boundary
        interior = self._lu.solve(rhs)
        scale = max(float(np.abs(boundary).max(initial=0.0)), np.finfo(float).tiny)
        residual = np.abs(system @ interior - rhs).max(initial=0.0)
        if residual > tolerance * scale:
            interior = interior + self._lu.solve(rhs - system @ interior)
            residual = np.abs(system @ interior - rhs).max(initial=0.0)
            if residual > tolerance * scale:
                raise ConsistencyError(f"Dirichlet residual {residual:.3e} above {tolerance:.1e}*{scale:.3e}")
        return np.concatenate([interior, boundary])

    def solve_exact(self, boundary):
        """Rational solve by sparse row reduction of the augmented system."""
        self._check_solvable()
        n = self.interior_size
        boundary = [Fraction(b) for b in boundary]
        rows = {}
        for i in range(n):
            row = {i: QQ(self.degree)}
            rhs = QQ(0)
            for j in self.neighbors[i]:
                j = int(j)
                if j < n:
                    row[j] = row.get(j, QQ(0)) - QQ(1)
                else:
                    b = boundary[j - n]
                    rhs += QQ(b.numerator, b.denominator)
            row[n] = rhs
            rows[i] = {c: v for c, v in row.items() if v}
        reduced, pivots = DomainMatrix(rows, (n, n + 1), QQ).rref()
        if tuple(pivots) != tuple(range(n)):
            raise ConsistencyError("Dirichlet system on a ball is singular")
        entries = reduced.to_sparse().rep
        interior = [_to_fraction(entries.get(i, {}).get(n, QQ(0))) for i in range(n)]
        return np.array(interior + boundary, dtype=object)

    def as_function(self, values, exact):
        return BallFunction(self.ball, dict(zip(self.points, values)), exact)


def geometry(g, s, radius, center=None, budget=None):
    center = g.zero() if center is None else center
    return BallGeometry(g, s, make_ball(g, s, center, radius, budget=budget))


def solve_dirichlet(g, s, ball, boundary_values, exact=None, tolerance=None):
    """Harmonic extension of `boundary_values` (a mapping on the boundary sphere) into the ball.

    `exact=None` picks rational mode when every boundary value is rational and the ball has
    at most `Config.EXACT_SOLVE_LIMIT` vertices.
    """
    missing = [x for x in ball.boundary if x not in boundary_values]
    if missing:
        raise GroupError(f"boundary value missing at {missing[0]!r} ({len(missing)} in total)")
    values = [boundary_values[x] for x in ball.boundary]
    rational = all(_is_rational(v) for v in values)
    if exact is None:
        exact = rational and len(ball) <= Config.EXACT_SOLVE_LIMIT
    if not exact and not all(math.isfinite(float(v)) for v in values):
        raise GroupError("boundary values must be finite")
    geo = BallGeometry(g, s, ball)
    logger.info(f"Dirichlet solve on {len(ball)} vertices, exact={exact}")
    solution = geo.solve_exact(values) if exact else geo.solve(values, tolerance)
    return geo.as_function(solution, exact)


def maximum_principle_holds(solution):
    """min over the boundary <= f <= max over the boundary on every member."""
    low, high = solution.boundary_range()
    return all(low <= v <= high for v in solution.restrict(solution.ball.members))


def harmonic_sample(g, s, radius, rng, exact=True, center=None, low=-1, high=1):
    """Dirichlet-harmonic function on B_radius with random boundary data from `rng`.

    In exact mode the boundary values are drawn uniformly from the grid
    {low, low + 1/1000, ..., high} so the solve stays rational; otherwise they are
    continuous uniform draws on [low, high].
    """
    geo = geometry(g, s, radius, center=center)
    if exact:
        grid = rng.integers(low * 1000, high * 1000 + 1, size=geo.boundary_size)
        boundary = [Fraction(int(v), 1000) for v in grid]
        return geo.as_function(geo.solve_exact(boundary), True)
    return geo.as_function(geo.solve(rng.uniform(low, high, geo.boundary_size)), False)


def trial_generators(seed, trials):
    """One PCG64 stream per trial, identical for every radius of a sweep."""
    return [np.random.Generator(np.random.PCG64(child)) for child in np.random.SeedSequence(seed).spawn(trials)]


@dataclass
class MeasurementReport:
    kind: str
    trials: int
    seed: int
    outer_factor: object = None
    constants: dict = field(default_factory=dict)  # R -> sup over trials
    secondary: dict = field(default_factory=dict)  # R -> sup of the oscillation form (gradient only)
    degenerate: dict = field(default_factory=dict)  # R -> number of 0/0 trials

    @property
    def radii(self):
        return sorted(self.constants)

    @property
    def supremum(self):
        return max(self.constants.values(), default=0.0)

    def record(self, radius, ratios, degenerate=0, secondary=None):
        self.constants[radius] = float(max(ratios, default=0.0))
        self.degenerate[radius] = degenerate
        if secondary is not None:
            self.secondary[radius] = float(max(secondary, default=0.0))
        logger.info(f"{self.kind} R={radius}: constant {self.constants[radius]:.6g} over {self.trials} trials")

    def to_frame(self):
        rows = [
            {'kind': self.kind, 'R': r, 'trials': self.trials, 'seed': self.seed, 'constant': self.constants[r]}
            for r in self.radii
        ]
        return pd.DataFrame(rows, columns=['kind', 'R', 'trials', 'seed', 'constant'])

    def to_dict(self):
        return {
            'kind': self.kind,
            'trials': self.trials,
            'seed': self.seed,
            'outer_factor': self.outer_factor,
            'constants': {str(r): self.constants[r] for r in self.radii},
            'secondary': {str(r): v for r, v in sorted(self.secondary.items())},
            'degenerate': {str(r): v for r, v in sorted(self.degenerate.items())},
            'supremum': self.supremum,
        }


def _sweep(radii):
    radii = [radii] if isinstance(radii, int) else list(radii)
    if not radii or min(radii) < 1:
        raise GroupError("radii must be >= 1")
    return sorted(set(radii))


def _check_trials(trials, outer_factor=None):
    if trials < 1:
        raise GroupError(f"need at least one trial, got {trials}")
    if outer_factor is not None and outer_factor < 2:
        raise GroupError(f"outer factor must be >= 2, got {outer_factor}")


def _ratio(lhs, rhs):
    """(lhs / rhs, degenerate flag); 0/0 counts as 0, x/0 with x > 0 is a contradiction."""
    if rhs == 0:
        if lhs == 0:
            return 0, True
        raise ConsistencyError(f"right-hand side vanishes while left-hand side is {lhs}")
    return lhs / rhs, False


def measure_harnack(g, s, radii, outer_factor=4, trials=50, seed=7, budget=None):
    """sup of max_{B_R} f / min_{B_R} f for positive harmonic f on B_{outer*R}."""
    _check_trials(trials, outer_factor)
    report = MeasurementReport('harnack', trials, seed, outer_factor)
    for R in _sweep(radii):
        geo = geometry(g, s, outer_factor * R, budget=budget)
        inner = geo.within(R)
        ratios = []
        for rng in trial_generators(seed, trials):
            f = geo.solve(rng.uniform(1.0, 2.0, geo.boundary_size))
            ratios.append(f[inner].max() / f[inner].min())
        report.record(R, ratios)
    return report


def measure_gradient_constant(g, s, radii, outer_factor=4, trials=50, seed=7, budget=None):
    """sup of R |grad f|(p) / f(p); the oscillation form goes to `secondary`."""
    _check_trials(trials, outer_factor)
    report = MeasurementReport('gradient', trials, seed, outer_factor)
    for R in _sweep(radii):
        geo = geometry(g, s, outer_factor * R, budget=budget)
        center = np.array([0])
        unit = geo.within(1)
        members = np.arange(geo.interior_size)
        ratios, oscillation_ratios = [], []
        for rng in trial_generators(seed, trials):
            f = geo.solve(rng.uniform(1.0, 2.0, geo.boundary_size))
            gradient = math.sqrt(geo.gradient_squared(f, center)[0])
            ratios.append(R * gradient / f[0])
            osc = f[members].max() - f[members].min()
            top = R * math.sqrt(geo.gradient_squared(f, unit).max())
            oscillation_ratios.append(top / osc if osc > 0 else 0.0)
        report.record(R, ratios, secondary=oscillation_ratios)
    return report


def poincare_ratio(geo, values, R):
    """sum_{B_R} (f - f_{B_R})^2 / (R^2 sum_{edges in B_3R} (f(x) - f(y))^2)."""
    inner = values[geo.within(R)]
    mean = inner.sum() / len(inner)
    lhs = ((inner - mean) ** 2).sum()
    return _ratio(lhs, R * R * geo.edge_energy(values, 3 * R))


def caccioppoli_ratio(geo, values, R):
    """sum_{B_R} |grad f|^2 / (R^-2 sum_{B_6R} f^2)."""
    lhs = geo.gradient_squared(values, geo.within(R)).sum()
    rhs = (values[geo.within(6 * R)] ** 2).sum()
    return _ratio(lhs * R * R, rhs)


def mean_value_ratio(geo, values, R):
    """f(p) |B_R| / sum_{B_R} f for nonnegative f; p is the ball center."""
    inner = values[geo.within(R)]
    return _ratio(values[0] * len(inner), inner.sum())


def energy_ratio(kind, g, s, R, fn, center=None, budget=None):
    """Ratio of one inequality for a single function given as a callable or mapping."""
    radius = {'poincare': 3 * R, 'caccioppoli': 6 * R, 'meanvalue': R}[kind]
    geo = geometry(g, s, radius, center=center, budget=budget)
    values = geo.tabulate(fn)
    compute = {'poincare': poincare_ratio, 'caccioppoli': caccioppoli_ratio, 'meanvalue': mean_value_ratio}[kind]
    return compute(geo, values, R)[0]


def _random_polynomial(geo, rng, scale):
    """Random affine plus quadratic function of the free coordinates (zero when m = 0)."""
    m = geo.group.free_rank
    if m == 0:
        return np.zeros(len(geo.points))
    a = rng.uniform(-1.0, 1.0, m)
    b = rng.uniform(-1.0, 1.0, m)
    coords = geo.coordinates()
    return coords @ a + (coords @ b) ** 2 / scale


def measure_energy_constant(kind, g, s, radii, trials=50, seed=7, budget=None):
    """Poincare, Caccioppoli or mean-value constant, measured as the sup of LHS/RHS."""
    if kind not in ('poincare', 'caccioppoli', 'meanvalue'):
        raise GroupError(f"unknown energy inequality {kind!r}")
    _check_trials(trials)
    report = MeasurementReport(kind, trials, seed)
    for R in _sweep(radii):
        ratios, degenerate = [], 0
        if kind == 'poincare':
            geo = geometry(g, s, 3 * R, budget=budget)
            for rng in trial_generators(seed, trials):
                smooth = _random_polynomial(geo, rng, R)
                values = smooth + rng.uniform(-1.0, 1.0, len(geo.points))
                ratio, flat = poincare_ratio(geo, values, R)
                ratios.append(ratio)
                degenerate += flat
        elif kind == 'caccioppoli':
            geo = geometry(g, s, 6 * R, budget=budget)
            for rng in trial_generators(seed, trials):
                values = geo.solve(rng.uniform(-1.0, 1.0, geo.boundary_size))
                ratio, flat = caccioppoli_ratio(geo, values, R)
                ratios.append(ratio)
                degenerate += flat
        else:
            geo = geometry(g, s, R + 1, budget=budget)
            inner = geo.within(R)
            for t, rng in enumerate(trial_generators(seed, trials)):
                values = np.zeros(len(geo.points))
                if t % 2 == 0 or g.free_rank == 0:
                    # |grad h|^2 is subharmonic on B_R when h is harmonic on B_{R+1}
                    h = geo.solve(rng.uniform(-1.0, 1.0, geo.boundary_size))
                    values[inner] = geo.gradient_squared(h, inner)
                else:
                    a = rng.uniform(-1.0, 1.0, g.free_rank)
                    b = rng.uniform(-1.0, 1.0)
                    values = (geo.coordinates() @ a + b) ** 2
                ratio, flat = mean_value_ratio(geo, values, R)
                ratios.append(ratio)
                degenerate += flat
        report.record(R, ratios, degenerate=degenerate)
    return report


def verify_onesided_growth(g, s, radii, outer_factor=4, trials=50, seed=7, budget=None):
    """sup of max_{B_R} f / M for harmonic f on B_{outer*R}, f(p) = 0, f >= -M there."""
    _check_trials(trials, outer_factor)
    report = MeasurementReport('onesided', trials, seed, outer_factor)
    for R in _sweep(radii):
        geo = geometry(g, s, outer_factor * R, budget=budget)
        inner = geo.within(R)
        ratios, degenerate = [], 0
        for rng in trial_generators(seed, trials):
            f = geo.solve(rng.uniform(-1.0, 1.0, geo.boundary_size))
            f = f - f[0]
            lower = max(0.0, -f.min())
            if lower == 0:
                ratios.append(0.0)
                degenerate += 1
                continue
            ratios.append(f[inner].max() / lower)
        report.record(R, ratios, degenerate=degenerate)
    return report


def measure(kind, g, s, radii, outer_factor=4, trials=50, seed=7, budget=None):
    """Dispatch on the measurement kind."""
    if kind == 'harnack':
        return measure_harnack(g, s, radii, outer_factor, trials, seed, budget)
    if kind == 'gradient':
        return measure_gradient_constant(g, s, radii, outer_factor, trials, seed, budget)
    if kind == 'onesided':
        return verify_onesided_growth(g, s, radii, outer_factor, trials, seed, budget)
    if kind in ('poincare', 'caccioppoli', 'meanvalue'):
        return measure_energy_constant(kind, g, s, radii, trials, seed, budget)
    raise GroupError(f"unknown measurement kind {kind!r}; expected one of {', '.join(KINDS)}")
