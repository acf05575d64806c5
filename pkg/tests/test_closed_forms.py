import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from scipy import special

from selberglab import closed_forms as cf, identities
from selberglab.constant_terms import (
    compositions,
    degrees,
    multinomial,
    root_system,
    verify_ct,
)
from selberglab.errors import DomainError, GammaPoleError, SelbergLabError
from selberglab.gammas import gamma_product

settings.register_profile("lab", max_examples=60, deadline=None)
settings.load_profile("lab")

pos = st.floats(0.2, 4.0)
gam = st.floats(0.05, 1.5)


@given(pos, pos)
def test_one_variable_selberg_is_beta(a, b):
    assert math.isclose(cf.selberg_rhs(1, a, b, 0.7).value(), special.beta(a, b), rel_tol=1e-12)


def test_small_exact_values():
    # int int (x - y)^2 dx dy over the unit square
    assert cf.selberg_exact(2, 1, 1, 1) == Fraction(1, 6)
    assert cf.selberg_exact(1, 2, 3, 0) == Fraction(1, 12)
    # CT (1-x)^2 (1-1/x)^3 = C(5, 2)
    assert cf.morris_exact(1, 2, 3, 0) == 10
    assert cf.mehta_rhs(1, 0.7).value() == pytest.approx(1.0, rel=1e-14)
    assert cf.laguerre_rhs(1, 2.5, 0.3).value() == pytest.approx(math.gamma(2.5), rel=1e-14)
    assert cf.cauchy_sc_rhs(1, 1, 1, 0.5).value() == pytest.approx(0.5, rel=1e-14)


@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.integers(0, 2))
def test_exact_and_float_selberg_agree(n, a, b, k):
    assert math.isclose(float(cf.selberg_exact(n, a, b, k)), cf.selberg_rhs(n, a, b, k).value(), rel_tol=1e-12)


@given(st.integers(1, 5), pos, pos, gam)
def test_anderson_recurrence(n, a, b, g):
    assert identities.anderson_recurrence_residual(n, a, b, g) < 1e-10


@given(st.integers(2, 5), pos, gam)
def test_small_alpha_limit(n, b, g):
    assert identities.small_alpha_residual(n, b, g) < 1e-10


@pytest.mark.parametrize("kind", list(identities.RESIDUALS))
def test_identity_sweeps(kind):
    tol = 0.02 if kind == "stirling" else 1e-10
    for params, r in identities.sweep(kind, count=20, seed=11):
        assert r < tol, (kind, params, r)


def test_selberg_domain_error():
    with pytest.raises(DomainError):
        cf.selberg_rhs(2, -0.5, 1, 1)
    assert isinstance(DomainError("x"), SelbergLabError)


def test_gamma_pole_reported():
    with pytest.raises(GammaPoleError):
        gamma_product([-1.0], [])


def test_reflection_factor_is_one_when_reflection_is_identity():
    # alpha = 1 - alpha - beta - 2(n-1)g, i.e. alpha = (1 - beta)/2 at n=1
    b = 0.4
    assert cf.selberg_reflection_factor(1, (1 - b) / 2, b, 0.3) == pytest.approx(1.0, rel=1e-12)


def test_group_product_for_a1_is_two():
    # |W(A1)| at gamma = 1
    assert cf.group_product_rhs((1, 2), 1).value() == pytest.approx(2.0, rel=1e-14)


def test_cue_moment_small_case():
    # <|1 - e^{i t}|^2> over the circle = 2
    assert cf.cue_moment_rhs(1, 1).value() == pytest.approx(2.0, rel=1e-14)


def test_dixon_3f2_terminating_series_vs_product():
    a, b, c = 0.5, -0.7, -0.4
    assert cf.dixon_3f2_series(a, b, c, 4000) == pytest.approx(cf.dixon_3f2_rhs(a, b, c).value(), rel=1e-10)


def test_decimation_residuals():
    for r, k, n in [(1, 0, 2), (2, 0, 2), (1, 1, 3)]:
        d = cf.decimation_check(r, k, n)
        assert d.residual < 1e-10 and d.exponents_agree


# -- constant terms --------------------------------------------------------------


def test_dyson_small_values():
    assert verify_ct("dyson", a=(1, 1, 1)).lhs == 6
    assert verify_ct("dyson", a=(1, 2)).lhs == 3
    assert verify_ct("dyson", a=(2, 2, 2)).lhs == 90


@given(st.lists(st.integers(0, 2), min_size=1, max_size=3))
def test_dyson_is_multinomial(a):
    r = verify_ct("dyson", a=tuple(a))
    assert r.lhs == r.rhs == multinomial(a)


def test_compositions_enumeration():
    got = list(compositions(2, 2))
    assert (0, 0) in got and (2, 0) in got and (1, 1) in got and (0, 2) in got
    assert all(sum(c) <= 2 for c in got)


@pytest.mark.parametrize("name,want", [("A1", (2,)), ("A2", (2, 3)), ("A3", (2, 3, 4)),
                                       ("B2", (2, 4)), ("C2", (2, 4)), ("G2", (2, 6))])
def test_degrees_from_heights(name, want):
    assert tuple(degrees(root_system(name))) == want


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2"])
def test_macdonald_constant_term(name):
    assert verify_ct("macdonald", system=name, k=1).passed


def test_q_dyson_reduces_to_q_binomial():
    r = verify_ct("q_dyson", a=(1, 1))
    assert r.passed
    assert r.lhs.q_coefficients() == [1, 1]


def test_q_morris_at_q_one():
    r = verify_ct("q_morris", n=2, a=1, b=1, k=1)
    assert r.passed
    assert sum(r.lhs.q_coefficients()) == cf.morris_exact(2, 1, 1, 1)


def test_bcs_factorial_form():
    r = verify_ct("bcs", k1=1, k2=1, k3=1, n=2)
    assert r.passed


def test_unknown_identity_rejected():
    with pytest.raises(SelbergLabError):
        verify_ct("nope")
