import json

import numpy as np
import pytest

from engel_slr.verify import (
    DEFAULT_TOLERANCES,
    SUITES,
    Battery,
    _resolve,
    parse_tolerance_overrides,
    random_covectors,
    run_verify,
)


def test_parse_overrides():
    assert parse_tolerance_overrides(["a=1e-3", " b =2"]) == {"a": 1e-3, "b": 2.0}
    for bad in (["a"], ["=1"], ["a=x"]):
        with pytest.raises(ValueError):
            parse_tolerance_overrides(bad)


def test_resolve_by_name_and_prefix():
    tol = _resolve(DEFAULT_TOLERANCES, {"oracle": 1.0, "H_drift": 2.0})
    assert all(tol[k] == 1.0 for k in tol if k.startswith("oracle_"))
    assert tol["H_drift"] == 2.0 and tol["group_axioms"] == DEFAULT_TOLERANCES["group_axioms"]
    with pytest.raises(KeyError):
        _resolve(DEFAULT_TOLERANCES, {"orac": 1.0})


def test_random_covectors_are_normalized():
    rng = np.random.default_rng(1)
    for kind in ("hyperbolic", "elliptic"):
        for xi in random_covectors(kind, 20, rng):
            assert xi.xi1**2 - xi.xi2**2 == pytest.approx(1.0)
            assert (xi.xi4 == 0) == (kind == "hyperbolic")


def test_report_json_and_unknown_suite():
    report = run_verify(["group", "abnormal"])
    doc = json.loads(report.to_json())
    assert doc["passed"] and doc["n_failed"] == 0 and doc["n_checks"] == len(report.results)
    assert {r["suite"] for r in doc["results"]} == {"group", "abnormal"}
    with pytest.raises(KeyError):
        Battery().run(["nope"])


def test_tight_override_fails_the_check():
    report = run_verify(["reachability"], {"ratio_odd": -1.0})
    bad = [r for r in report.results if not r.passed]
    assert [r.name for r in bad] == ["ratio_odd"] and not report.passed


def test_full_battery_passes():
    report = run_verify(SUITES, n_random=10)
    assert report.passed, [r for r in report.results if not r.passed]
