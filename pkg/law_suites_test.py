import pytest

import law_suites
import weight_core as wc
from weight_core import INF, ZERO


@pytest.mark.parametrize("suite", sorted(law_suites.SUITES))
def test_every_suite_passes(suite):
    results = law_suites.run_suite(suite, samples=40, seed=0)
    assert results
    failing = [(r.name, r.first_failure) for r in results if not r.ok]
    assert failing == []
    assert all(r.passed > 0 for r in results)


def test_exhaustive_residuation_counts():
    results = {r.name: r for r in law_suites.run_suite("residuation")}
    assert results["residuation/additive"].passed == 8 ** 3
    assert results["residuation/multiplicative"].passed == 8 ** 3


def test_corrupted_hom_is_reported(monkeypatch):
    honest = wc.hom_plus

    def corrupted(mu, nu):
        if mu == ZERO and nu == INF:
            return ZERO
        return honest(mu, nu)

    monkeypatch.setattr(wc, "hom_plus", corrupted)
    results = {r.name: r for r in law_suites.run_suite("residuation")}
    additive = results["residuation/additive"]
    assert additive.failed > 0
    assert additive.first_failure == "lam=0 mu=0 nu=inf"
    assert results["residuation/multiplicative"].ok


def test_output_is_reproducible():
    first = law_suites.format_results(law_suites.run_suite("quantale", samples=30, seed=3))
    second = law_suites.format_results(law_suites.run_suite("quantale", samples=30, seed=3))
    assert first == second
    assert first.splitlines()[0].split("\t")[0] == "quantale/+ preserves joins"


def test_format_lists_first_failures():
    results = [law_suites.LawResult("s/a", 3, 0), law_suites.LawResult("s/b", 1, 2, "x=0")]
    assert law_suites.format_results(results) == "s/a\t3\t0\ns/b\t1\t2\n  first failure: x=0\n"
    assert law_suites.format_results([]) == ""


def test_all_runs_every_suite():
    names = {r.name.split("/")[0] for r in law_suites.run_suite("all", samples=10)}
    assert names == set(law_suites.SUITES)


def test_unknown_suite():
    with pytest.raises(law_suites.UnknownSuiteError):
        law_suites.run_suite("nonsense")
