import pytest

from semifourier.verify import SUITES, default_params, run_suites


def test_all_suites_pass(cfg, spec):
    report = run_suites(list(SUITES), cfg, spec, default_params())
    failing = [row for row in report.rows if not row["passed"]]
    assert failing == []
    assert report.summary["fail"] == 0
    assert report.summary["pass"] == len(report.rows)


def test_suite_selection(cfg, spec):
    report = run_suites(["eigenvalues"], cfg, spec, default_params())
    assert {row["suite"] for row in report.rows} == {"eigenvalues"}


def test_unknown_suite_rejected(cfg, spec):
    with pytest.raises(KeyError):
        run_suites(["bogus"], cfg, spec, default_params())


def test_params_merge_with_defaults(cfg, spec):
    # None entries fall back to the default parameter values
    report = run_suites(["eigenvalues"], cfg, spec, {"modes": None, "trunc": None})
    assert report.params["modes"] == default_params()["modes"]


def test_report_rows_have_uniform_schema(cfg, spec):
    report = run_suites(["quadrature", "parseval"], cfg, spec, default_params())
    for row in report.rows:
        assert set(row) == {"suite", "check", "observed", "tolerance", "passed"}


def test_alternate_interval_still_passes(spec):
    from semifourier import SpectralConfig

    cfg = SpectralConfig(-1.0, 1.0, 3.0)
    names = ["eigenvalues", "basis-boundary", "orthonormality", "fundamental-relation",
             "lower-bound", "diagonal-identity", "norm-ladder"]
    report = run_suites(names, cfg, spec, default_params())
    assert report.summary["fail"] == 0
