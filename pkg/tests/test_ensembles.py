import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from selberglab import ensembles as ens

settings.register_profile("lab", max_examples=30, deadline=None)
settings.load_profile("lab")


@given(st.lists(st.floats(0.0, 4.0), min_size=2, max_size=5), st.integers(0, 2**32))
def test_dirichlet_weights_are_on_the_simplex(s, seed):
    if not any(s):
        return
    w = ens.dirichlet_sample(s, seed, size=50)
    assert np.all(w >= 0)
    assert np.all(np.abs(w.sum(axis=1) - 1.0) <= 4e-16)
    assert np.all(w[:, np.asarray(s) == 0] == 0)


@given(st.lists(st.floats(-5, 5), min_size=2, max_size=6, unique=True), st.integers(0, 2**32))
def test_rational_roots_interlace_nodes(nodes, seed):
    nodes = sorted(nodes, reverse=True)
    if min(np.diff(nodes[::-1])) < 1e-3:
        return
    w = ens.dirichlet_sample(np.ones(len(nodes)), seed)
    pts = ens.rational_roots(nodes, w).points[0]
    a = np.asarray(nodes)
    assert np.all(pts[::-1] < a[:-1]) and np.all(pts[::-1] > a[1:])


def test_rational_root_one_variable_is_weighted_mean():
    root = ens.rational_roots([3, 1], [0.3, 0.7]).points[0, 0]
    assert root == pytest.approx(0.3 * 1 + 0.7 * 3, abs=1e-12)


def test_crystallized_roots_are_jacobi_zeros():
    got = ens.crystallized_roots(4, 1.7, 2.6)
    want = ens.jacobi_zeros_unit(4, 1.7, 2.6)
    assert np.max(np.abs(np.sort(got) - np.sort(want))) < 1e-8


def test_hermite_methods_agree_on_shared_draws():
    a = ens.hermite_beta_sample(3, 0.8, "recurrence", 200, seed=9).points
    b = ens.hermite_beta_sample(3, 0.8, "tridiagonal", 200, seed=9).points
    assert np.max(np.abs(a - b)) < 1e-9


def test_hermite_second_moment():
    smp = ens.hermite_beta_sample(3, 1.0, "tridiagonal", 20000, seed=1)
    row = ens.moment_report(smp, "hermite", dict(gamma=1.0))[0]
    assert abs(row.z_score) < 4


def test_selberg_sampler_first_moment():
    smp = ens.selberg_density_sample(2, 1.0, 1.0, 1.0, 20000, seed=2)
    assert np.all((smp.points > 0) & (smp.points < 1))
    row = ens.moment_report(smp, "selberg", dict(alpha=1.0, beta=1.0, gamma=1.0))[0]
    assert abs(row.z_score) < 4


def test_moment_report_requires_enough_samples():
    smp = ens.selberg_density_sample(2, 1.0, 1.0, 1.0, 10, seed=2)
    with pytest.raises(ValueError):
        ens.moment_report(smp, "selberg", dict(alpha=1.0, beta=1.0, gamma=1.0))


def test_haar_angles_shape_and_seed():
    a = ens.haar_unitary_angles(3, 100, seed=4)
    b = ens.haar_unitary_angles(3, 100, seed=4)
    assert a.points.shape == (100, 3)
    assert np.array_equal(a.points, b.points)


def test_metropolis_laguerre_moment():
    run = ens.metropolis_sample("laguerre", dict(m=2, gamma=0.7), 1, n_steps=2000, burn_in=500, chains=32, seed=6)
    assert 0.1 <= run.acceptance <= 0.9
    rows = ens.moment_report(run.pooled(), "laguerre", dict(m=2, gamma=0.7), chains=32)
    assert abs(rows[-1].z_score) < 4


def test_ks_detects_different_distributions():
    rng = np.random.default_rng(0)
    assert ens.ks_two_sample(rng.normal(size=2000), rng.normal(0.3, size=2000)) < 1e-3


def test_elementary_symmetric():
    pts = np.array([[1.0, 2.0, 3.0]])
    assert ens.elementary(pts, 1)[0] == 6
    assert ens.elementary(pts, 2)[0] == 11
    assert ens.elementary(pts, 3)[0] == 6


def test_csv_export(tmp_path):
    smp = ens.haar_unitary_angles(2, 3, seed=0)
    path = tmp_path / "s.csv"
    smp.to_csv(path)
    assert len(path.read_text().strip().splitlines()) >= 3
