"""Tests for balls, word distances and volume growth."""

from fractions import Fraction

import numpy as np
import pytest

from cayley import (
    ball,
    ball_volume,
    compare_volumes,
    compare_word_metrics,
    measure_volume_doubling,
    volume_profile,
    word_distance,
)
from data.samples import sample_generating_sets
from exceptions import BudgetExceededError, GroupError
from models.group import GeneratingSet, canonical_generating_set, make_group


def wide_z():
    g = make_group(1)
    return g, GeneratingSet.from_half(g, [g.element((2,)), g.element((3,))])


def test_ball_volumes_z2():
    g = make_group(2)
    s = canonical_generating_set(g)
    assert ball_volume(g, s, 0) == 1
    assert ball_volume(g, s, 1) == 5
    assert ball_volume(g, s, 2) == 13


def test_ball_boundary_is_next_sphere():
    g = make_group(1)
    b = ball(g, canonical_generating_set(g), g.zero(), 1)
    assert sorted(x.free[0] for x in b.members) == [-1, 0, 1]
    assert sorted(x.free[0] for x in b.boundary) == [-2, 2]
    assert b.closure()[0] == g.zero()


def test_ball_around_other_center():
    g = make_group(2)
    center = g.element((5, -2))
    b = ball(g, canonical_generating_set(g), center, 1)
    assert center in b
    assert g.element((6, -2)) in b
    assert g.zero() not in b


def test_word_distance_nonstandard():
    g, s = wide_z()
    assert word_distance(g, s, g.zero(), g.element((1,))) == 2
    assert word_distance(g, s, g.zero(), g.element((5,))) == 2
    z2 = make_group(2)
    assert word_distance(z2, canonical_generating_set(z2), z2.zero(), z2.element((2, -3))) == 5


def test_duplicates_and_zero_do_not_change_distances():
    g = make_group(2)
    for _, s in sample_generating_sets(g)[:3]:
        assert volume_profile(g, s, 3) == [1, 5, 13, 25]


def test_finite_group_ball_saturates():
    g = make_group(0, (5,))
    s = canonical_generating_set(g)
    assert volume_profile(g, s, 3) == [1, 3, 5, 5]
    b = ball(g, s, g.zero(), 4)
    assert len(b) == 5
    assert b.boundary == ()


def test_budget_enforced():
    g = make_group(2)
    with pytest.raises(BudgetExceededError):
        ball(g, canonical_generating_set(g), g.zero(), 10, budget=50)


def test_negative_radius_rejected():
    g = make_group(1)
    with pytest.raises(GroupError):
        ball(g, canonical_generating_set(g), g.zero(), -1)


def test_doubling_examples():
    z = make_group(1)
    table = measure_volume_doubling(z, canonical_generating_set(z), [5])
    assert table.loc[0, 'doubling_ratio'] == Fraction(21, 11)
    z2 = make_group(2)
    table = measure_volume_doubling(z2, canonical_generating_set(z2), [2])
    assert table.loc[0, 'doubling_ratio'] == Fraction(41, 13)
    assert list(table.columns) == ['r', 'volume', 'doubling_ratio', 'normalized_volume']


@pytest.mark.parametrize('m,name,low,high', [
    (1, 'standard', Fraction(33, 16), Fraction(3)),
    (1, 'wide', Fraction(5), Fraction(13, 2)),
    (2, 'standard', Fraction(545, 256), Fraction(5)),
    (2, 'skew', Fraction(545, 256), Fraction(5)),
])
def test_volume_doubling_bounded(m, name, low, high):
    g = make_group(m)
    s = dict(sample_generating_sets(g))[name]
    table = measure_volume_doubling(g, s, range(1, 17))
    assert (table['doubling_ratio'] <= 8).all()
    normalized = list(table['normalized_volume'])
    assert min(normalized) == low
    assert max(normalized) == high
    assert all(2 <= v <= 7 for v in normalized)


def test_wide_z_balls_fill_intervals():
    g, s = wide_z()
    assert volume_profile(g, s, 5) == [1, 5, 13, 19, 25, 31]


def test_word_distance_is_translation_invariant_metric():
    g = make_group(2, (2,))
    s = dict(sample_generating_sets(g))['mixed']
    rng = np.random.default_rng(7)

    def draw():
        return g.element(tuple(int(v) for v in rng.integers(-4, 5, size=2)), (int(rng.integers(0, 2)),))

    for _ in range(20):
        x, y, z = draw(), draw(), draw()
        d = word_distance(g, s, x, y)
        assert word_distance(g, s, g.add(x, z), g.add(y, z)) == d
        assert word_distance(g, s, y, x) == d
        assert d <= word_distance(g, s, x, z) + word_distance(g, s, z, y)


def test_ball_with_torsion_generator():
    g = make_group(1, (2,))
    s = GeneratingSet.from_half(g, [g.element((1,), (0,)), g.element((0,), (1,))])
    assert [x.encode() for x in s] == ['1|0', '0|1', '-1|0', '0|1']
    b = ball(g, s, g.zero(), 1)
    assert len(b) == 4
    assert set(b.members) == {g.zero(), g.element((1,), (0,)), g.element((-1,), (0,)), g.element((0,), (1,))}


def test_compare_word_metrics():
    g, wide = wide_z()
    standard = canonical_generating_set(g)
    assert compare_word_metrics(g, standard, wide, 3) == (Fraction(1, 3), Fraction(2))
    assert compare_word_metrics(g, standard, standard, 5) == (1, 1)


def test_compare_volumes_inner_half():
    g, wide = wide_z()
    result = compare_volumes(g, canonical_generating_set(g), wide, 4, sample_radius=4)
    assert result['c_high'] == 2
    assert result['inner_radius'] == 2
    assert result['inner_volume'] == 5
    assert result['holds']
    with pytest.raises(GroupError):
        compare_volumes(g, canonical_generating_set(g), wide, 20, sample_radius=2)
