from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from selberglab.jack import (
    binomial_theorem_check,
    cauchy_identity_check,
    ct_inner_product,
    eigen_residual_laurent,
    jack,
    jack_eval,
    jack_eval_ones,
    jack_norm_rhs,
    schur_bialternant_check,
)
from selberglab.partitions import Partition, dominance_leq, hook_products, partitions, partitions_up_to

settings.register_profile("lab", max_examples=40, deadline=None)
settings.load_profile("lab")

gammas = st.sampled_from([Fraction(1), Fraction(2), Fraction(3, 7), Fraction(5, 3), Fraction(1, 2)])
small_partitions = st.sampled_from(partitions_up_to(4, 3))


def test_partition_counts():
    # p(0..8)
    assert [len(partitions(w)) for w in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]
    assert len(partitions(5, 2)) == 3


def test_conjugate_and_cells():
    lam = Partition((4, 2, 1))
    assert lam.conjugate() == Partition((3, 2, 1, 1))
    assert lam.conjugate().conjugate() == lam
    assert len(list(lam.cells())) == lam.weight == 7


def test_dominance_order():
    assert dominance_leq(Partition((2, 2)), Partition((3, 1)))
    assert not dominance_leq(Partition((3, 1)), Partition((2, 2)))
    # (3,1,1,1) and (2,2,2) are incomparable
    a, b = Partition((3, 1, 1, 1)), Partition((2, 2, 2))
    assert not dominance_leq(a, b) and not dominance_leq(b, a)


def test_hook_products_at_gamma_one_are_hook_lengths():
    c, cp = hook_products(Partition((3, 1)), 1)
    # hooks of (3,1): 4, 2, 1, 1
    assert c == cp == 8


def test_two_row_jack_explicit():
    # P_(2) = m_2 + 2g/(1+g) m_11, written out by hand
    g = Fraction(3, 7)
    P = jack((2,), 2, g)
    assert P.coefficient(Partition((2,))) == 1
    assert P.coefficient(Partition((1, 1))) == 2 * g / (1 + g)


@given(small_partitions, gammas)
def test_eigen_residual_vanishes(lam, g):
    n = max(lam.length, 1)
    assert eigen_residual_laurent(lam, n, g).is_zero()


def test_eigen_residual_detects_wrong_parameter():
    # the polynomial built at gamma=2 is not an eigenfunction of the gamma=1/2 operator
    from selberglab import jack as J

    lam = Partition((2, 1))
    P = J.jack(lam, 3, Fraction(2))
    wrong = J.cs_apply(P, Fraction(1, 2))
    ev = J.cs_eigenvalue(lam, 3, Fraction(1, 2))
    assert any(wrong.coefficient(mu) != ev * P.coefficient(mu) for mu in P.coeffs)


@given(small_partitions, gammas)
def test_evaluation_at_ones_matches_closed_form(lam, g):
    n = 3
    if lam.length > n:
        return
    assert jack(lam, n, g).evaluate([1] * n) == jack_eval_ones(lam, n, g)


@given(small_partitions, gammas)
def test_triangular_with_unit_leading_term(lam, g):
    P = jack(lam, 3, g)
    assert P.leading() == lam
    assert P.coefficient(lam) == 1
    assert all(dominance_leq(mu, lam) for mu in P.coeffs)


@pytest.mark.parametrize("lam", partitions_up_to(4, 3))
def test_schur_at_gamma_one(lam):
    assert schur_bialternant_check(lam, 3)


def test_jack_eval_float_path_matches_exact():
    lam, g = (2, 1), Fraction(5, 3)
    exact = jack_eval(lam, [Fraction(1, 2), Fraction(1, 3), Fraction(2)], g)
    approx = jack_eval(lam, [0.5, 1 / 3, 2.0], float(g))
    assert abs(float(exact) - approx) < 1e-12


@pytest.mark.parametrize("k", [1, 2])
def test_orthogonality_and_norm(k):
    n = 2
    lams = partitions_up_to(3, n)
    polys = {lam: jack(lam, n, k).to_laurent() for lam in lams}
    for i, a in enumerate(lams):
        assert ct_inner_product(polys[a], polys[a], k, n) == jack_norm_rhs(a, n, k)
        for b in lams[i + 1:]:
            assert ct_inner_product(polys[a], polys[b], k, n) == 0


def test_norm_of_empty_partition_is_equal_parameter_dyson():
    # CT prod_{i != j} (1 - x_i/x_j)^k = (nk)! / k!^n
    assert jack_norm_rhs((), 3, 2) == 90


@pytest.mark.parametrize("g", [Fraction(1), Fraction(3, 7)])
def test_cauchy_and_binomial(g):
    assert cauchy_identity_check(3, 2, 2, g)
    assert binomial_theorem_check(Fraction(2, 5), 2, 3, g)
