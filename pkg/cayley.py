"""Word metric on the Cayley graph (G, S).

Balls are grown by breadth-first search keyed on reduced group elements. Multi-edges do
not change adjacency and self-loops (0 in S) add nothing, so only the distinct non-zero
generators are used as BFS steps.
"""

from collections import deque
from fractions import Fraction
import logging

import pandas as pd

from config import Config
from exceptions import BudgetExceededError, GroupError
from models.ball import Ball

logger = logging.getLogger(__name__)


def _bfs(g, s, center, max_depth=None, targets=None, budget=None):
    """Distances from `center`, stopping at `max_depth` or once every target is reached."""
    budget = Config.VERTEX_BUDGET if budget is None else budget
    steps = s.distinct_steps(g)
    distances = {center: 0}
    remaining = set(targets or ()) - {center}
    queue = deque([center])
    while queue:
        if targets is not None and not remaining:
            break
        x = queue.popleft()
        depth = distances[x]
        if max_depth is not None and depth >= max_depth:
            continue
        for step in steps:
            y = g.add(x, step)
            if y in distances:
                continue
            distances[y] = depth + 1
            remaining.discard(y)
            if len(distances) > budget:
                raise BudgetExceededError(
                    f"BFS from {center!r} passed {budget} vertices at depth {depth + 1}"
                )
            queue.append(y)
    if remaining:
        raise GroupError(f"{len(remaining)} targets unreachable; generating set does not generate")
    return distances


def ball(g, s, center, r, budget=None):
    """Closed ball B_r(center) with its boundary sphere at distance r+1."""
    if r < 0:
        raise GroupError(f"radius must be nonnegative, got {r}")
    distances = _bfs(g, s, center, max_depth=r + 1, budget=budget)
    members = {x: d for x, d in distances.items() if d <= r}
    boundary = tuple(x for x, d in distances.items() if d == r + 1)
    logger.debug(f"ball r={r} around {center!r}: {len(members)} members, {len(boundary)} boundary")
    return Ball(center, r, members, boundary)


def word_distance(g, s, x, y, budget=None):
    """d^S(x, y) = d^S(0, y - x)."""
    target = g.sub(y, x)
    return _bfs(g, s, g.zero(), targets={target}, budget=budget)[target]


def ball_volume(g, s, r, budget=None):
    return len(ball(g, s, g.zero(), r, budget=budget))


def volume_profile(g, s, max_radius, budget=None):
    """[|B_0|, |B_1|, ..., |B_max_radius|] from a single BFS."""
    distances = _bfs(g, s, g.zero(), max_depth=max_radius, budget=budget)
    counts = [0] * (max_radius + 1)
    for d in distances.values():
        counts[d] += 1
    volumes, running = [], 0
    for c in counts:
        running += c
        volumes.append(running)
    return volumes


def measure_volume_doubling(g, s, radii, budget=None):
    """Table r, |B_r|, |B_2r|/|B_r|, |B_r|/r^m with exact rational ratios."""
    radii = sorted(set(int(r) for r in radii))
    if not radii or radii[0] < 1:
        raise GroupError("volume doubling radii must be >= 1")
    volumes = volume_profile(g, s, 2 * radii[-1], budget=budget)
    rows = []
    for r in radii:
        rows.append({
            'r': r,
            'volume': volumes[r],
            'doubling_ratio': Fraction(volumes[2 * r], volumes[r]),
            'normalized_volume': Fraction(volumes[r], r ** g.free_rank),
        })
    return pd.DataFrame(rows, columns=['r', 'volume', 'doubling_ratio', 'normalized_volume'])


def compare_word_metrics(g, s1, s2, r, budget=None):
    """Empirical bi-Lipschitz constants min/max of d^{S2}(0,y)/d^{S1}(0,y) over B^{S1}_r \\ {0}."""
    if r < 1:
        raise GroupError("sampling radius must be >= 1")
    zero = g.zero()
    first = {y: d for y, d in _bfs(g, s1, zero, max_depth=r, budget=budget).items() if d > 0}
    if not first:
        raise GroupError("sampling ball contains only the identity")
    second = _bfs(g, s2, zero, targets=set(first), budget=budget)
    ratios = [Fraction(second[y], d) for y, d in first.items()]
    return min(ratios), max(ratios)


def compare_volumes(g, s1, s2, r, sample_radius, budget=None):
    """|B^{S1}_{floor(r/c_high)}| <= |B^{S2}_r| with c_high measured at `sample_radius`."""
    _, c_high = compare_word_metrics(g, s1, s2, sample_radius, budget=budget)
    inner = int(Fraction(r) / c_high)
    if inner > sample_radius:
        raise GroupError(f"sample radius {sample_radius} too small to certify radius {inner}")
    inner_volume = ball_volume(g, s1, inner, budget=budget)
    outer_volume = ball_volume(g, s2, r, budget=budget)
    return {
        'c_high': c_high,
        'inner_radius': inner,
        'inner_volume': inner_volume,
        'volume': outer_volume,
        'holds': inner_volume <= outer_volume,
    }
