"""The thirteen acceptance checks, run through the same suite registry the CLI uses.

Each test records one PASS/FAIL line; conftest.py prints them at the end of
the session.  `python tests/test_acceptance.py` runs them without pytest.
"""
from __future__ import annotations

import time
from fractions import Fraction

from selberglab import closed_forms as cf
from selberglab.constant_terms import degrees, root_system
from selberglab.report import SuiteConfig, emit_report, run_suite

LINES: list = []


def _record(num: int, title: str, ok: bool, detail: str) -> None:
    LINES.append(f"[{'PASS' if ok else 'FAIL'}] {num:02d} {title}: {detail}")


def _run(suite: str, keep=None, seed: int = 0):
    t0 = time.perf_counter()
    recs = run_suite(SuiteConfig(suites=[suite], seed=seed))
    dt = time.perf_counter() - t0
    if keep is not None:
        recs = [r for r in recs if keep(r.case)]
    bad = [r for r in recs if not r.passed]
    return recs, bad, dt


def _detail(recs, bad, dt, extra=""):
    out = f"{len(recs) - len(bad)}/{len(recs)} cases, {dt:.1f} s"
    if bad:
        out += f"; first failure {bad[0].case} residual={bad[0].residual}"
    return out + extra


def _check(num, title, recs, bad, dt, limit=None, extra_ok=True, extra=""):
    ok = bool(recs) and not bad and extra_ok and (limit is None or dt < limit)
    detail = _detail(recs, bad, dt, extra)
    if limit is not None:
        detail += f" (limit {limit} s)"
    _record(num, title, ok, detail)
    assert ok, detail


def test_01_exact_dyson():
    recs, bad, dt = _run("dyson")
    got90 = any(r.case["a"] == [2, 2, 2] and r.lhs == 90 for r in recs)
    _check(1, "exact Dyson constant terms", recs, bad, dt, limit=60, extra_ok=got90,
           extra=", equal-parameter n=3 k=2 value 90" + (" found" if got90 else " MISSING"))


def test_02_exact_macdonald():
    recs, bad, dt = _run("macdonald", keep=lambda c: c["identity"] in ("macdonald", "degrees"))
    deg_ok = tuple(degrees(root_system("A2"))) == (2, 3) and tuple(degrees(root_system("G2"))) == (2, 6)
    systems = {r.case["system"] for r in recs}
    cover = systems == {"A1", "A2", "A3", "B2", "C2", "G2"}
    _check(2, "exact root-system constant terms", recs, bad, dt, limit=300, extra_ok=deg_ok and cover,
           extra=f", degrees A2/G2 {'ok' if deg_ok else 'WRONG'}, systems {sorted(systems)}")


def test_03_exact_q_constant_terms():
    recs, bad, dt = _run("q_constant_terms")
    kinds = {r.case["identity"] for r in recs}
    _check(3, "exact Morris, q-Morris, q-Dyson with q -> 1", recs, bad, dt,
           extra_ok=kinds == {"morris", "q_morris", "q_dyson"})


def test_04_jack():
    recs, bad, dt = _run("jack")
    kinds = {r.case["check"] for r in recs}
    need = {"triangularity", "orthogonality", "norm", "evaluation", "cauchy", "binomial"}
    _check(4, "Jack polynomial identities, exact", recs, bad, dt, extra_ok=need <= kinds)


def test_05_closed_forms_vs_numerics():
    recs, bad, dt = _run("closed_numeric")
    fams = {r.case.get("family") for r in recs}
    need = {"selberg", "mehta", "laguerre", "askey_richards", "cauchy_sc", "dixon_anderson"}
    mc4 = any(r.case.get("kind") == "mc" and r.case["family"] == "selberg" and r.case["n"] == 4 for r in recs)
    _check(5, "closed forms vs quadrature / Monte Carlo / torus", recs, bad, dt, limit=900,
           extra_ok=need <= fams and mc4)


def test_06_identity_web():
    recs, bad, dt = _run("identities")
    counts = {}
    for r in recs:
        counts[r.case["kind"]] = counts.get(r.case["kind"], 0) + 1
    need = {"anderson", "functional", "small_alpha", "sm_bridge", "stirling"}
    ok = need <= set(counts) and all(counts[k] == 50 for k in need)
    _check(6, "identity web over 50 random parameter sets each", recs, bad, dt, extra_ok=ok,
           extra=f", sets per relation {counts}")


JACK_NUMERIC = {"kadell", "aomoto", "hua_kadell", "euler_2f1", "okounkov_olshanski"}


def test_07_jack_weighted_integrals():
    recs, bad, dt = _run("jack_numeric", keep=lambda c: c["check"] in JACK_NUMERIC)
    gauss = any(r.case["check"] == "euler_2f1" and r.case["z"] == 1 for r in recs)
    _check(7, "Kadell, Aomoto, Hua-Kadell, Euler 2F1, Gauss sum, Okounkov-Olshanski", recs, bad, dt,
           extra_ok=gauss and {r.case["check"] for r in recs} == JACK_NUMERIC)


def test_08_q_selberg():
    recs, bad, dt = _run("q")
    n2 = [r for r in recs if r.case["check"] == "jackson" and r.case["n"] == 2]
    cover = {(r.case["k"], r.case["q"]) for r in n2} >= {(k, q) for k in (0, 1, 2) for q in (0.5, 0.9)}
    limit = any(r.case["check"] == "classical_limit" for r in recs)
    _check(8, "Jackson sums vs q-product, and the q -> 1 limit", recs, bad, dt, extra_ok=cover and limit)


def test_09_elliptic():
    recs, bad, dt = _run("elliptic")
    kinds = {r.case["check"] for r in recs}
    _check(9, "elliptic gamma relations and the elliptic beta integral", recs, bad, dt,
           extra_ok={"gamma_q_shift", "reflection", "beta_integral", "selberg_n1"} <= kinds)


def test_10_ensembles():
    recs, bad, dt = _run("ensembles")
    kinds = {r.case["check"] for r in recs}
    need = {"hermite_ks", "hermite_tr2", "selberg_e1", "decimation", "cue_moment"}
    _check(10, "random ensembles against closed-form moments", recs, bad, dt, limit=600, extra_ok=need <= kinds)


def test_11_hyperdeterminant_and_placement():
    recs, bad, dt = _run("combinatorial")
    vals = {(r.case["check"], r.case["n"], r.case.get("k"), r.case["alpha"], r.case["beta"]): r.lhs for r in recs}
    ok = (vals.get(("hankel", 2, 1, 1, 1)) == cf.selberg_exact(2, 1, 1, 1) / 2 == Fraction(1, 12)
          and any(r.case["check"] == "stanley" and r.lhs == Fraction(1, 6) for r in recs))
    _check(11, "Hankel hyperdeterminant and placement probability", recs, bad, dt, extra_ok=ok,
           extra=", values 1/12 and 1/6 " + ("reproduced" if ok else "NOT reproduced"))


def test_12_gelfond():
    recs, bad, dt = _run("gelfond")
    m1 = next(r for r in recs if r.case["n"] == 1)
    detail = ", ".join(f"m{r.case['n']}={r.lhs:.6g} vs {r.rhs:.6g}" for r in recs)
    _check(12, "Gelfond minimum", recs, bad, dt, extra_ok=m1.lhs == 2.0 and len(recs) == 3, extra=", " + detail)


def test_13_determinism():
    cfg = SuiteConfig(suites=["closed_numeric", "identities", "combinatorial", "dyson"], seed=2**64 - 5,
                      grids={"dyson": {"n_max": 3, "sum_max": 3}})
    t0 = time.perf_counter()
    a = emit_report(run_suite(cfg))
    b = emit_report(run_suite(SuiteConfig(**vars(cfg))))
    dt = time.perf_counter() - t0
    ok = a == b and len(a) > 0
    n = a.count(b"\n")
    _record(13, "byte-identical reports for identical config and seed", ok,
            f"{n} records x2, {len(a)} bytes, {'identical' if ok else 'DIFFERENT'}, {dt:.1f} s")
    assert ok


if __name__ == "__main__":
    import sys

    status = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                status = 1
    print("\n".join(LINES))
    sys.exit(status)
