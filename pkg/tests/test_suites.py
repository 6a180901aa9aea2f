import pytest

from kanlift.report import Report
from kanlift.suites import MUTANTS, SUITES, detect_mutant, mutant_report, run_suite


@pytest.mark.parametrize("name", ["monad-laws", "engine-vs-closed-form", "comonad-laws"])
def test_fast_suites_pass(name):
    report = run_suite(name)
    assert report.ok, report


def test_closed_objects_small():
    assert run_suite("closed-objects", max_points=2, exhaustive_points=1).ok


def test_lifting_laws_small():
    assert run_suite("lifting-laws", max_points=2).ok


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")
    assert len(SUITES) == 5


@pytest.mark.parametrize("mutant", MUTANTS, ids=lambda mu: mu.name)
def test_each_mutant_is_detected(mutant):
    assert detect_mutant(mutant) is not None


def test_mutants_leave_no_trace():
    mutant_report(MUTANTS[3:4])
    assert run_suite("engine-vs-closed-form", max_points=2).ok


def test_report_rendering():
    r = Report("demo")
    r.record("good", True, 3)
    r.record("bad", False, 1, {"x": 1})
    assert not r.ok and [c.name for c in r.failures()] == ["bad"]
    assert "[FAIL] bad (1 cases)  witness: {'x': 1}" in str(r)
    assert r.to_json()["checks"][0]["witness"] is None
