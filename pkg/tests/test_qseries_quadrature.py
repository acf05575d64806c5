import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special

from selberglab import closed_forms as cf, qseries
from selberglab.errors import AccuracyError
from selberglab.quadrature import (
    DensitySpec,
    closed_form,
    de_integrate,
    jackson_sum,
    mc_integrate,
    quad_integrate,
    torus_quadrature,
)

settings.register_profile("lab", max_examples=40, deadline=None)
settings.load_profile("lab")


@given(st.floats(0.3, 6), st.floats(0.1, 0.9))
def test_q_gamma_recurrence(x, q):
    # Gamma_q(x+1) = (1 - q^x)/(1 - q) Gamma_q(x)
    lhs = qseries.q_gamma(x + 1, q)
    rhs = (1 - q**x) / (1 - q) * qseries.q_gamma(x, q)
    assert math.isclose(lhs, rhs, rel_tol=1e-11)


def test_q_gamma_approaches_gamma():
    assert qseries.q_gamma(4.5, 0.9999) == pytest.approx(math.gamma(4.5), rel=1e-3)


def test_finite_pochhammer_is_a_product():
    a, q = 0.3, 0.6
    want = np.prod([1 - a * q**j for j in range(5)])
    assert qseries.q_pochhammer(a, q, 5) == pytest.approx(want, rel=1e-15)


zs = st.complex_numbers(min_magnitude=0.2, max_magnitude=0.9, allow_nan=False, allow_infinity=False)


@given(zs)
def test_elliptic_gamma_q_shift_and_reflection(z):
    p, q = 0.15, 0.25
    g = qseries.elliptic_gamma
    assert abs(g(q * z, p, q) / g(z, p, q) - qseries.theta(z, p)) <= 1e-10 * abs(qseries.theta(z, p)) + 1e-15
    assert abs(g(z, p, q) * g(p * q / z, p, q) - 1) < 1e-10


@given(zs)
def test_theta_quasi_periodicity(z):
    p = 0.2
    assert abs(qseries.theta(p * z, p) + qseries.theta(z, p) / z) <= 1e-12 * abs(qseries.theta(z, p) / z) + 1e-15


def test_elliptic_beta_integral_balanced():
    ts = [0.01 ** (1 / 6)] * 6
    r = torus_quadrature("elliptic_beta", dict(ts=ts, p=0.1, q=0.1), grid=64)
    assert r.value == pytest.approx(complex(qseries.elliptic_beta_rhs(ts, 0.1, 0.1)).real, rel=1e-6)


def test_askey_wilson_torus():
    ts = [0.2, -0.3, 0.4, 0.15]
    r = torus_quadrature("gustafson_n1", dict(ts=ts, q=0.3), grid=64)
    assert r.value == pytest.approx(qseries.askey_wilson_rhs(ts, 0.3), rel=1e-10)


@pytest.mark.parametrize("n,k,q", [(1, 1, 0.5), (2, 1, 0.5), (2, 2, 0.9)])
def test_jackson_sum_vs_product(n, k, q):
    r = jackson_sum(n, 1.5, 2.0, k, q)
    assert r.value == pytest.approx(qseries.q_selberg_rhs(n, 1.5, 2.0, k, q), rel=1e-10)


def test_tanh_sinh_on_endpoint_singularity():
    # int_0^1 x^(-1/2) (1-x)^(-1/3) dx = B(1/2, 2/3); uc carries 1 - x without cancellation
    r = de_integrate(lambda u, uc: u[0] ** -0.5 * uc[0] ** (-1 / 3), 1, rel_tol=1e-12)
    assert r.value == pytest.approx(special.beta(0.5, 2 / 3), rel=1e-11)


def test_quadrature_vs_closed_form_selberg():
    spec = DensitySpec("selberg", 2, dict(alpha=1.5, beta=2.5, gamma=0.7))
    r = quad_integrate(spec, rel_tol=1e-8)
    assert r.value == pytest.approx(closed_form(spec), rel=1e-7)


def test_monte_carlo_is_seeded():
    spec = DensitySpec("selberg", 2, dict(alpha=2, beta=2, gamma=1))
    a = mc_integrate(spec, 20000, seed=5)
    b = mc_integrate(spec, 20000, seed=5)
    assert a.value == b.value
    assert abs(a.value - closed_form(spec)) < 5 * a.err_estimate


def test_morris_torus_when_exponents_sum_even():
    r = torus_quadrature("morris", dict(n=1, a=1, b=1, gamma=0.7), grid=64)
    assert r.value == pytest.approx(cf.morris_rhs(1, 1, 1, 0.7).value(), rel=1e-8)


def test_unreachable_accuracy_raises():
    # a non-integrable singularity cannot converge
    with pytest.raises(AccuracyError):
        de_integrate(lambda u, uc: 1 / u[0], 1, rel_tol=1e-12, max_level=6)
