from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from selberglab.algebra import (
    LaurentPoly,
    lp_arith,
    lp_pow,
    q_binomial,
    q_divexact,
    q_factorial,
    term_ceiling,
    vandermonde_power,
)
from selberglab.errors import ArityError, TermCeilingError

NV = 3

exps = st.lists(st.integers(-3, 3), min_size=NV, max_size=NV)
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def polys(draw, max_terms=4):
    out = LaurentPoly(NV)
    for e, c in draw(st.lists(st.tuples(exps, coeffs), max_size=max_terms)):
        out = out + LaurentPoly.monomial(e, c)
    return out


settings.register_profile("lab", max_examples=60, deadline=None)
settings.load_profile("lab")


@given(polys(), polys())
def test_addition_and_product_commute(f, g):
    assert f + g == g + f
    assert f * g == g * f


@given(polys(), polys(), polys())
def test_distributive(f, g, h):
    assert f * (g + h) == f * g + f * h


@given(polys(), polys())
def test_product_rule(f, g):
    for i in range(NV):
        assert (f * g).derivative(i) == f.derivative(i) * g + f * g.derivative(i)


@given(polys(), polys())
def test_ct_pairing_matches_expanded_product(f, g):
    assert f.ct_pairing(g) == (f * g).constant_term()
    assert f.invert_variables().invert_variables() == f


@given(polys(), st.lists(st.fractions(min_value=Fraction(1, 3), max_value=3, max_denominator=5),
                         min_size=NV, max_size=NV))
def test_exact_and_float_evaluation_agree(f, pt):
    exact = f.evaluate(pt)
    approx = f.evaluate_numeric([float(v) for v in pt])
    assert abs(float(exact) - approx) <= 1e-12 * (1 + abs(float(exact)))


@given(polys(max_terms=3), st.integers(0, 3))
def test_integer_power_matches_repeated_product(f, e):
    want = LaurentPoly.constant(1, NV)
    for _ in range(e):
        want = want * f
    assert f**e == want
    assert lp_pow(f, e) == want


def test_euler_operator_scales_by_degree():
    m = LaurentPoly.monomial([2, -1, 0], Fraction(3, 4))
    assert m.euler(0) == m * 2
    assert m.euler(1) == m * -1
    assert m.euler(2).is_zero()


def test_constant_term_of_symmetric_product():
    x, y = LaurentPoly.variable(0, 2), LaurentPoly.variable(1, 2)
    f = (1 - x * LaurentPoly.monomial([0, -1])) * (1 - y * LaurentPoly.monomial([-1, 0]))
    assert f.constant_term() == 2
    assert f.is_symmetric()


def test_mismatched_arity_rejected():
    with pytest.raises(ArityError):
        LaurentPoly.variable(0, 2) + LaurentPoly.variable(0, 3)


def test_lp_arith_dispatch():
    a, b = LaurentPoly.variable(0, 1), LaurentPoly.constant(2, 1)
    assert lp_arith(a, b, "add") == a + b
    assert lp_arith(a, b, "mul") == a * 2
    with pytest.raises(ValueError):
        lp_arith(a, b, "div")


def test_term_ceiling_trips_on_large_expansions():
    with term_ceiling(50):
        with pytest.raises(TermCeilingError):
            vandermonde_power(3, 4)
    assert not vandermonde_power(3, 1).is_zero()


def test_q_binomial_and_factorial():
    assert q_binomial(4, 2).q_coefficients() == [1, 1, 2, 1, 1]
    # (q; q)_m vanishes at q = 1
    assert sum(q_factorial(4).q_coefficients()) == 0
    assert q_factorial(2).q_coefficients() == [1, -1, -1, 1]
    assert q_divexact(q_factorial(4), q_factorial(2) * q_factorial(2)) == q_binomial(4, 2)


def test_q_divexact_rejects_inexact_division():
    with pytest.raises(ValueError):
        q_divexact(q_binomial(3, 1), q_factorial(3))
