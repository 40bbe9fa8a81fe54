from letlab.selftest import (
    degree_vs_matrix,
    format_report,
    matrix_vs_cpl,
    matrix_vs_nmatrix,
    matrix_vs_twist,
    run_selftest,
    table_membership,
)


def test_default_run_passes():
    results = run_selftest(42, 500)
    assert all(r.ok for r in results)
    assert [r.total for r in results] == [120, 500, 500, 500, 500]


def test_report_is_reproducible():
    a = format_report(run_selftest(9, 50), 9, 50)
    b = format_report(run_selftest(9, 50), 9, 50)
    assert a == b
    assert a.splitlines()[0] == "selftest seed=9 trials=50"


def test_suites_individually():
    assert table_membership().ok
    assert matrix_vs_nmatrix(1, 30).ok
    assert matrix_vs_cpl(1, 30).ok
    assert matrix_vs_twist(1, 30).ok
    assert degree_vs_matrix(1, 30).ok


def test_failure_lines():
    from letlab.selftest import SuiteResult

    r = SuiteResult("demo", total=3, failures=["p |- q"])
    assert r.line() == "FAIL demo: 2/3"
    assert "mismatch: p |- q" in format_report([r], 0, 3)
