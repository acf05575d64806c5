import pytest

from selberglab.report import SuiteConfig, run_suite

# suites and case families that sit outside the acceptance list but still have to hold
SUPPLEMENTARY = [
    ("transforms", None),
    ("jack_numeric", {"pde", "si", "dixon_anderson", "dixon_anderson_det", "dotsenko_fateev"}),
    ("macdonald", {"q_macdonald", "bcs"}),
    ("elliptic", {"gamma_p_shift", "theta_shift", "askey_wilson", "p_to_zero", "t5_to_zero"}),
]


@pytest.mark.parametrize("suite,kinds", SUPPLEMENTARY, ids=[s for s, _ in SUPPLEMENTARY])
def test_supplementary_cases(suite, kinds):
    recs = run_suite(SuiteConfig(suites=[suite], seed=0))
    if kinds is not None:
        recs = [r for r in recs if (r.case.get("check") or r.case.get("identity")) in kinds]
    assert recs
    bad = [(r.case, r.residual) for r in recs if not r.passed]
    assert not bad
