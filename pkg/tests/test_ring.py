"""Polynomial ring kernel: monomial order, graded dimensions, arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codim2.ring import (
    DEFAULT_CHAR,
    Poly,
    PolyRing,
    dim_graded_piece,
    euler_OP,
    grevlex_key,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    monomials_of_degree,
)

R4 = PolyRing(4)


def test_grevlex_order_degree_two_in_three_variables():
    r = PolyRing(3)
    x0, x1, x2 = r.variables()
    monos = [p.lm() for p in (x0 * x0, x0 * x1, x1 * x1, x0 * x2, x1 * x2, x2 * x2)]
    assert sorted(monos, key=grevlex_key, reverse=True) == monos


def test_grevlex_key_is_additive():
    a, b = (3, 0, 2, 1), (0, 4, 1, 2)
    ka, kb, kab = grevlex_key(a), grevlex_key(b), grevlex_key(mono_mul(a, b))
    assert kab == tuple(x + y for x, y in zip(ka, kb))


@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(0, 5)), min_size=2, max_size=2))
def test_monomial_lcm_divisible_by_both(pair):
    a, b = pair
    l = mono_lcm(a, b)
    assert mono_divides(a, l) and mono_divides(b, l)
    assert mono_mul(mono_div(l, a), a) == l


def test_monomials_of_degree_enumeration():
    for d in range(6):
        monos = monomials_of_degree(4, d)
        assert len(monos) == len(set(monos)) == dim_graded_piece(4, d)
        keys = [grevlex_key(m) for m in monos]
        assert keys == sorted(keys, reverse=True)
    assert monomials_of_degree(4, -1) == ()


def test_graded_dimensions_in_four_variables():
    assert [dim_graded_piece(4, d) for d in range(-2, 5)] == [0, 0, 1, 4, 10, 20, 35]


def test_free_module_graded_dimensions():
    # dim of (+) R(-a_i) in degree v is the sum of dim R_{v-a_i}
    assert sum(dim_graded_piece(4, 2 - a) for a in [2]) == 1
    assert sum(dim_graded_piece(4, 3 - a) for a in [0]) == 20
    assert sum(dim_graded_piece(4, 3 - a) for a in [2, 2, 2]) == 12


def test_euler_characteristic_of_line_bundle_on_projective_space():
    # chi(O_P3(v)) = C(v+3,3) as a polynomial, so it vanishes at -1,-2,-3
    assert [euler_OP(4, v) for v in (2, 1, 0, -1, -2, -3, -4, -5)] == [10, 4, 1, 0, 0, 0, -1, -4]
    for v in range(0, 8):
        assert euler_OP(4, v) == dim_graded_piece(4, v)


def test_parse_round_trip_and_juxtaposition():
    f = R4.parse("x0^2 - 2*x1*x2 + 3*x3^2")
    assert R4.parse(str(f)) == f
    assert R4.parse("2x0x1") == R4.parse("2*x0*x1")
    assert R4.parse("(x0+x1)^2") == R4.parse("x0^2 + 2x0x1 + x1^2")
    assert R4.parse("-x0 - -x1") == R4.parse("x1 - x0")
    with pytest.raises(ValueError):
        R4.parse("y0 + 1")


def test_leading_term_under_grevlex():
    f = R4.parse("x3^2 + x0*x2 + x1^2")
    assert f.lm() == (0, 2, 0, 0)
    assert f.degree == 2 and f.is_homogeneous()


small_polys = st.builds(
    lambda pairs: R4.from_terms({m: c for m, c in pairs}),
    st.lists(
        st.tuples(
            st.tuples(*(st.integers(0, 2) for _ in range(4))),
            st.integers(-10, 10),
        ),
        max_size=5,
    ),
)


@settings(max_examples=60)
@given(small_polys, small_polys, small_polys)
def test_ring_axioms(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f
    assert f + (-f) == R4.zero()
    assert (f - g) + g == f


@settings(max_examples=30)
@given(small_polys)
def test_power_matches_repeated_product(f):
    assert f ** 3 == f * f * f
    assert f ** 0 == R4.one()


def test_char_zero_uses_exact_rationals():
    r = PolyRing(3, char=0)
    f = r.parse("x0 + x1")
    g = f.scale(Fraction(1, 2))
    assert (g + g) == f
    assert g.lc() == Fraction(1, 2)


def test_random_form_is_deterministic_and_dense():
    f = R4.random_form(3, seed=7)
    g = R4.random_form(3, seed=7)
    h = R4.random_form(3, seed=8)
    assert f == g and f != h
    assert f.is_homogeneous() and f.degree == 3
    # dense draws at a large prime almost never hit zero coefficients
    assert len(f) >= dim_graded_piece(4, 3) - 2


def test_random_forms_distinct_across_seeds():
    seen = {R4.random_form(2, seed=s) for s in range(200)}
    assert len(seen) == 200


def test_substitute_identity_and_composition():
    f = R4.parse("x0*x3 - x1*x2")
    assert f.substitute(R4.variables()) == f
    images = [R4.variable((i + 1) % 4) for i in range(4)]
    g = f.substitute(images)
    assert g == R4.parse("x1*x0 - x2*x3")


def test_linear_change_images_are_linear_forms():
    mat = [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 2], [0, 0, 0, 1]]
    images = R4.linear_change(mat)
    assert [str(p) for p in images] == ["x0 + x1", "x1", "x2 + 2*x3", "x3"]
    f = R4.parse("x0*x1")
    assert f.substitute(images) == R4.parse("x0*x1 + x1^2")
