import math
from fractions import Fraction

import pytest

from selberglab import checks, closed_forms as cf
from selberglab.algebra import LaurentPoly
from selberglab.errors import NonGenericParameterError, SelbergLabError


@pytest.mark.parametrize("lam,g", [((1,), 1), ((2,), 0.5), ((1, 1), 1)])
def test_kadell(lam, g):
    assert checks.kadell_check(lam, 2, 1.5, 2.0, g).passed


def test_kadell_empty_partition_is_selberg():
    r = checks.kadell_check((), 2, 1.5, 2.0, 0.7)
    assert r.rhs == pytest.approx(cf.selberg_rhs(2, 1.5, 2.0, 0.7).value(), rel=1e-12)


def test_aomoto():
    assert checks.aomoto_check(2, 3, 1.2, 1.3, 0.5, tol=1e-4).passed


def test_hua_kadell():
    assert checks.hua_kadell_check((1,), (1,), 2, 1.5, 1).passed


@pytest.mark.parametrize("z", [0.1, 1])
def test_euler_integral_for_2f1(z):
    c = 3.5 if z != 1 else 4.5
    assert checks.euler_2f1_check(2, 0.5, 1.5, c, 1, z).passed


@pytest.mark.parametrize("lam,g,x", [((), 1, (0, 1)), ((1,), 1, (0, 1)), ((2,), Fraction(1, 3), (0.2, 1.5))])
def test_okounkov_olshanski(lam, g, x):
    assert checks.okounkov_olshanski_check(lam, g, x).passed


def test_pde_truncation_one_variable():
    r = checks.pde_residual_2f1(Fraction(1, 2), Fraction(1, 3), Fraction(5, 2), Fraction(1, 2), [Fraction(1, 20)], 12)
    assert r.passed and r.residual < 1e-8


def test_pde_degree_check_catches_wrong_series():
    from selberglab.jack import hyper_series_poly

    a, b, c, g = Fraction(1, 2), Fraction(1, 3), Fraction(5, 2), Fraction(1, 2)
    good = checks.pde_residual_2f1(a, b, c, g, [Fraction(1, 20), Fraction(3, 100)], 6)
    assert good.min_degree_ok
    # series built at gamma = 1 but fed to the gamma = 1/2 operator
    wrong = checks._pde_apply(hyper_series_poly([a, b], [c], 2, Fraction(1), 6), 0, a, b, c, g)
    assert min(sum(e) for e, _ in wrong.items()) < 6 + 1


def test_integral_representation_with_half_integer_zeta():
    one = LaurentPoly.constant(1, 1)
    assert checks.si_identity_check(one, 2.5).passed


def test_integral_representation_rejects_integer_zeta():
    with pytest.raises(SelbergLabError):
        checks.si_identity_check(LaurentPoly.constant(1, 1), 2.0)


def test_dixon_anderson():
    assert checks.dixon_anderson_check((3, 1.5, 0), (1.5, 2, 1.2)).passed
    assert checks.dixon_anderson_determinant_check((3, 1.5, 0), (1.5, 2, 1.2)).passed


def test_dotsenko_fateev_ratio_against_quadrature():
    assert checks.dotsenko_fateev_check(2, 1, 0.3, 0.4, 0.1).passed


def test_hankel_hyperdeterminant_values():
    assert checks.hankel_hyperdet(2, 1, 1, 1) == Fraction(1, 12)
    assert checks.hankel_hyperdet(2, 2, 1, 1) == cf.selberg_exact(2, 1, 1, 2) / 2


def test_stanley_exhaustive():
    assert checks.stanley_probability(2, 1, 1, 2) == Fraction(1, 6)
    assert checks.stanley_probability(2, 1, 1, 1) == Fraction(1, 3)


def test_stanley_monte_carlo_is_seeded():
    a = checks.stanley_probability(2, 1, 1, 3, mode="mc", samples=20000, seed=3)
    assert a == checks.stanley_probability(2, 1, 1, 3, mode="mc", samples=20000, seed=3)
    p, se = a
    assert abs(p - cf.selberg_rhs(2, 1, 1, 1.5).value()) < 4 * se


def test_gelfond():
    assert checks.gelfond_min(1, restarts=5).m_n == 2.0
    r = checks.gelfond_min(2, restarts=20)
    assert r.m_n > (1 + math.exp(1 / 2 - 1)) ** 2
    assert r.beats_bound


def test_complex_selberg_one_variable():
    assert checks.complex_selberg_check(0.3, 0.3).passed


def test_jack_at_degenerate_parameter_raises():
    from selberglab.jack import jack

    with pytest.raises(NonGenericParameterError):
        jack((2,), 2, Fraction(-1))


def test_check_result_tolerance_semantics():
    r = checks.CheckResult("x", 1.0, 1.0 + 2e-7, 2e-7, 1e-7, "quad", 1)
    assert not r.passed
