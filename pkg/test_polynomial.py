"""Tests for polynomial functions, shifts and the dimension formulas."""

from fractions import Fraction
from math import comb

import pytest

from exceptions import BudgetExceededError, GroupError
from models.group import make_group
from models.polynomial import (
    PolyTorsionFunction,
    dim_harmonic_polynomials,
    dim_n_harmonic,
    dim_polynomials,
    dim_recursions,
    dim_reference,
    enumerate_basis,
    evaluate,
    partial_difference,
    shift,
)


def poly(m, coefficients, orders=()):
    return PolyTorsionFunction.from_polynomial(m, orders, coefficients)


def test_basis_order_graded_descending_lex():
    basis = enumerate_basis(2, 2)
    assert [alpha for alpha, _ in basis] == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


def test_basis_with_torsion_lists_slices_last():
    basis = enumerate_basis(1, 1, (2,))
    assert list(basis) == [((0,), (0,)), ((0,), (1,)), ((1,), (0,)), ((1,), (1,))]


def test_basis_sizes():
    assert len(enumerate_basis(3, 4)) == dim_polynomials(3, 4) == 35
    assert len(enumerate_basis(2, -1)) == 0
    assert len(enumerate_basis(0, 3, (2, 3))) == 6


def test_basis_budget():
    with pytest.raises(BudgetExceededError):
        enumerate_basis(3, 10, budget=100)


def test_shift_binomial_expansion():
    f = poly(2, {(2, 1): 1})  # x^2 y
    g = make_group(2)
    shifted = shift(f, g.element((1, -1)))
    # (x+1)^2 (y-1) = x^2 y - x^2 + 2xy - 2x + y - 1
    assert shifted == poly(2, {(2, 1): 1, (2, 0): -1, (1, 1): 2, (1, 0): -2, (0, 1): 1, (0, 0): -1})


def test_partial_difference_of_square():
    g = make_group(1)
    assert partial_difference(poly(1, {(2,): 1}), g.element((1,))) == poly(1, {(1,): 2, (0,): 1})


def test_shift_moves_torsion_slices():
    g = make_group(1, (3,))
    f = PolyTorsionFunction.monomial(1, (3,), (1,), torsion=(2,))
    shifted = shift(f, g.element((0,), (1,)))
    # f(x + s) lives on slice t where t + 1 = 2
    assert shifted.slice((1,)) == {(1,): Fraction(1)}
    assert shifted.slice((2,)) == {}


def test_evaluate_and_shift_agree():
    g = make_group(2, (2,))
    f = PolyTorsionFunction(2, (2,), {((2, 0), (0,)): 3, ((0, 1), (1,)): Fraction(-1, 2), ((0, 0), (1,)): 5})
    s = g.element((1, 2), (1,))
    for x in [g.element((0, 0), (0,)), g.element((3, -1), (1,)), g.element((-2, 4), (0,))]:
        assert evaluate(shift(f, s), x) == evaluate(f, g.add(x, s))


def test_shifts_compose():
    g = make_group(2, (2,))
    f = PolyTorsionFunction(2, (2,), {((3, 0), (0,)): 1, ((1, 2), (1,)): Fraction(2, 3), ((0, 0), (1,)): -4})
    for s, t in [(g.element((1, 0), (1,)), g.element((-2, 3), (0,))), (g.element((0, -1), (1,)), g.element((0, -1), (1,)))]:
        assert shift(shift(f, s), t) == shift(f, g.add(s, t))


def test_difference_and_reverse_difference_cancel():
    g = make_group(2, (3,))
    f = PolyTorsionFunction(2, (3,), {((2, 1), (0,)): 1, ((0, 3), (2,)): -2, ((1, 0), (1,)): Fraction(1, 5)})
    for s in [g.element((1, 0), (0,)), g.element((2, -1), (1,)), g.element((0, 0), (2,))]:
        total = partial_difference(f, s) + partial_difference(shift(f, s), g.neg(s))
        assert total.is_zero()


def test_degree_and_zero():
    assert PolyTorsionFunction.zero(2).degree() < 0
    assert poly(2, {(1, 2): 1, (1, 0): 4}).degree() == 3
    assert (poly(1, {(1,): 1}) - poly(1, {(1,): 1})).is_zero()


def test_torsion_constant():
    assert poly(1, {(1,): 1}, (2,)).is_torsion_constant()
    assert not PolyTorsionFunction.monomial(1, (2,), (1,), torsion=(0,)).is_torsion_constant()


def test_coordinates_round_trip_on_basis():
    basis = enumerate_basis(2, 2)
    f = poly(2, {(2, 0): 1, (0, 2): -1})
    assert PolyTorsionFunction.from_coordinates(basis, f.coordinates(basis)) == f


def test_to_dict_from_dict():
    f = PolyTorsionFunction(1, (2,), {((1,), (1,)): Fraction(3, 4)})
    entries = f.to_dict()
    assert entries == [{'alpha': [1], 'torsion': [1], 'num': '3', 'den': '4'}]
    assert PolyTorsionFunction.from_dict(1, (2,), entries) == f


def test_str():
    assert str(poly(2, {(2, 0): 1, (0, 2): -1})) == 'x^2 - y^2'
    assert str(PolyTorsionFunction.zero(1)) == '0'


def test_incompatible_functions_rejected():
    with pytest.raises(GroupError):
        poly(1, {(1,): 1}) + poly(2, {(1, 0): 1})


@pytest.mark.parametrize('m,k,expected', [(2, 3, (10, 7)), (1, 5, (6, 2)), (3, 2, (10, 9))])
def test_dim_reference(m, k, expected):
    assert dim_reference(m, k) == expected


def test_dim_reference_needs_free_rank():
    with pytest.raises(GroupError):
        dim_reference(0, 2)


def test_harmonic_dimension_closed_form():
    for m in range(1, 7):
        assert dim_harmonic_polynomials(m, 0) == 1
        for k in range(1, 11):
            assert dim_harmonic_polynomials(m, k) == comb(m + k - 1, k) + comb(m + k - 2, k - 1)


def test_n_harmonic_count():
    assert dim_n_harmonic(2, 4, 2) == 14
    # below 2n every polynomial is n-harmonic
    assert dim_n_harmonic(2, 3, 2) == dim_polynomials(2, 3)
    assert dim_n_harmonic(3, 5, 1) == dim_harmonic_polynomials(3, 5)


def test_dim_recursions_hold():
    for m in range(1, 7):
        for k in range(11):
            flags = dim_recursions(m, k)
            assert flags['harmonic'] in (True, None)
            assert flags['polynomial'] in (True, None)
    assert dim_recursions(1, 3)['harmonic'] is None
    assert dim_recursions(2, 1)['polynomial'] is None
