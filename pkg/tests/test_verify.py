import pytest

from macdemaz import build_affine_data, verify
from macdemaz.weyl import weight_box


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("MACDEMAZ_THREADS", "1")
    assert verify.worker_count() == 1
    monkeypatch.delenv("MACDEMAZ_THREADS")
    assert verify.worker_count() >= 1


def test_suite_names():
    assert verify.expand_suites(["all"]) == list(verify.SUITES)
    with pytest.raises(ValueError):
        verify.expand_suites(["bogus"])


def test_oracle_suites_skip_nonreduced():
    rep = verify.run_suite("bridge-tinf", verify.SuiteConfig(build_affine_data("A4~2"), 2))
    assert rep.skipped and rep.ok


def test_reports_are_deterministic(monkeypatch):
    cfg = verify.SuiteConfig(build_affine_data("A2~1"), 2)
    monkeypatch.setenv("MACDEMAZ_THREADS", "1")
    a = verify.run_suite("quadratic", cfg).to_json()
    monkeypatch.setenv("MACDEMAZ_THREADS", "4")
    b = verify.run_suite("quadratic", cfg, workers=4).to_json()
    assert a == b


@pytest.mark.parametrize("suite", ["triangularity", "expansion", "double-limit", "confluence"])
def test_nonreduced_on_half_integer_grid(suite):
    """A4~2 coefficients are nonnegative polynomials in q^{-1/2}."""
    rep = verify.run_suite(suite, verify.SuiteConfig(build_affine_data("A4~2"), 3))
    assert rep.ok, rep.failures[:3]


@pytest.mark.parametrize("label", ["A3~2", "D3~2"])
def test_degeneration_at_length_weighted_point(label):
    d = build_affine_data(label)
    for lam in weight_box(d.n, 3):
        if all(c <= 0 for c in lam):
            for prop, ok, detail in verify.check_degeneration(d, lam):
                assert ok, detail


def test_d43_small_box_oracle():
    """D4~3 passes the oracle bridge and degeneration at box 2 (box 4 is out of reach)."""
    d = build_affine_data("D4~3")
    for lam in weight_box(2, 2):
        for prop, ok, detail in verify.check_bridge(d, lam):
            assert ok, (prop, detail)
    for lam in [(0, -1), (-1, 0), (-2, 0)]:
        for prop, ok, detail in verify.check_degeneration(d, lam):
            assert ok, detail
