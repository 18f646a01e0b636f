"""Hilbert machinery: numerators, functions, polynomials, invariants."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codim2.groebner import Ideal
from codim2.hilbert import (
    dim_ambient,
    hilbert_function,
    hilbert_numerator,
    hilbert_polynomial,
    numerical_character,
    poly_eval,
    poly_eval_int,
    polynomial_degree,
)
from codim2.ring import PolyRing, mono_divides, monomials_of_degree

R = PolyRing(4)


def standard_monomial_count(monos, nvars, d):
    return sum(
        1
        for m in monomials_of_degree(nvars, d)
        if not any(mono_divides(g, m) for g in monos)
    )


def test_numerator_of_zero_and_unit_ideals():
    assert hilbert_numerator([], 4) == {0: 1}
    assert hilbert_numerator([(0, 0, 0, 0)], 4) == {}


def test_numerator_of_complete_intersection_is_product():
    num = hilbert_numerator([(2, 0, 0, 0), (0, 2, 0, 0)], 4)
    assert num == {0: 1, 2: -2, 4: 1}


monomial_sets = st.lists(
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)).filter(lambda m: sum(m) > 0),
    min_size=1,
    max_size=5,
)


@settings(max_examples=60, deadline=None)
@given(monomial_sets)
def test_hilbert_function_counts_standard_monomials(monos):
    num = hilbert_numerator(monos, 3)
    for d in range(7):
        assert hilbert_function(num, 3, d) == standard_monomial_count(monos, 3, d)


@settings(max_examples=40, deadline=None)
@given(monomial_sets)
def test_polynomial_agrees_with_function_eventually(monos):
    num = hilbert_numerator(monos, 3)
    hp = hilbert_polynomial(num, 3)
    start = max(num) if num else 0
    for d in range(start, start + 4):
        assert poly_eval(hp, d) == hilbert_function(num, 3, d)


def test_cubic_curve_invariants():
    ideal = Ideal(R, [
        R.parse("x1^2 - x0*x2"),
        R.parse("x1*x2 - x0*x3"),
        R.parse("x2^2 - x1*x3"),
    ])
    hp = ideal.hilbert_polynomial()
    assert hp == [Fraction(1), Fraction(3)]
    assert ideal.dimension() == 2
    ch = numerical_character(hp, 4)
    assert ch.dim == 1 and ch.degree == 3 and ch.genus == 0


def test_quartic_complete_intersection_invariants():
    ideal = Ideal(R, [R.random_form(2, seed=1), R.random_form(2, seed=2)])
    ch = numerical_character(ideal.hilbert_polynomial(), 4)
    assert ch.dim == 1 and ch.degree == 4 and ch.genus == 1


def test_surface_character_extraction():
    hp = [Fraction(9), Fraction(-12), Fraction(7)]
    ch = numerical_character(hp, 5)
    assert ch.dim == 2
    assert ch.degree == 14
    assert ch.sectional_genus == 20
    assert ch.chi_structure == 9


def test_threefold_character_extraction():
    hp = [Fraction(-153), Fraction(247, 2), Fraction(-67, 2), Fraction(5)]
    ch = numerical_character(hp, 6)
    assert ch.dim == 3
    assert ch.degree == 30
    assert ch.sectional_genus == 98
    assert ch.chi_structure == -153
    assert poly_eval_int(hp, 2) == 40 - 134 + 247 - 153


def test_degree_and_eval_helpers():
    assert polynomial_degree([Fraction(0)]) == -1
    assert polynomial_degree([Fraction(1), Fraction(0)]) == 0
    assert poly_eval_int([Fraction(1), Fraction(3)], 5) == 16
    with pytest.raises(ValueError):
        poly_eval_int([Fraction(1, 2)], 1)
    assert dim_ambient(4, 3) == 20 and dim_ambient(4, -1) == 0
