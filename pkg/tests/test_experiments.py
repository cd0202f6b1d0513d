"""test experiments"""
import logging

import numpy as np
import numpy.testing as npt
import pytest

import bessel_zeros.experiments as tested
from bessel_zeros.approx_formulas import real_zero_approx, real_zero_reference
from bessel_zeros.exceptions import ConfigurationError, ConsistencyError, InvalidDegreeError
from bessel_zeros.oracle import AberthConfig
from bessel_zeros.utils import Provenance, ZeroSet


def synthetic_records(degrees, amplitude=3.0, exponent=2.0):
    records = []
    for n in degrees:
        errors = amplitude / n**exponent * np.ones(n)
        records.append(tested.ConvergenceRecord(n, float(errors.max()), errors))
    return records


def test_fit_power_law():
    ns = np.arange(10, 501, 10)
    fit = tested.fit_power_law(ns, 3.0 / ns**2)
    npt.assert_allclose(fit.exponent, 2.0, atol=1e-6)
    npt.assert_allclose(fit.amplitude, 3.0, rtol=1e-6)
    assert fit.n_range == (10, 500)
    assert fit.rss < 1e-20


def test_fit_power_law_errors():
    with pytest.raises(ConfigurationError):
        tested.fit_power_law([10], [1.0])
    with pytest.raises(ConfigurationError):
        tested.fit_power_law([10, 20], [1.0, 0.0])
    with pytest.raises(ConfigurationError):
        tested.fit_power_law([10, 20, 30], [1.0, 0.5])


def test_convergence_record():
    closed_form = ZeroSet(2, np.array([-0.75 - 0.5j, -0.75 + 0.5j]), Provenance.NEWTON)
    record = tested.convergence_record(closed_form)
    assert record.max_error == 0
    npt.assert_array_equal(record.per_k_errors, [0, 0])
    assert tested.convergence_record(record_zero_set(), keep_per_k=False).per_k_errors is None
    with pytest.raises(ConsistencyError):
        tested.ConvergenceRecord(5, -1.0)


def record_zero_set():
    return ZeroSet(2, np.array([-0.5 - 0.3j, -0.5 + 0.3j]), Provenance.NEWTON)


@pytest.fixture(scope="module")
def study():
    return tested.convergence_study(10, 500, 10)


def test_convergence_study(study):
    records, fit = study
    assert [r.n for r in records] == list(range(10, 501, 10))
    assert fit.n_range == (10, 500)
    assert 0.8 <= fit.exponent <= 1.0
    assert not tested.in_expected_range(fit)
    scaled = np.array([record.n * record.max_error for record in records])
    assert np.all(scaled > 0)
    assert np.max(scaled) < 3 * np.min(scaled)
    for record in records:
        assert record.max_error == np.max(record.per_k_errors)


def test_convergence_study_flags_exponent(monkeypatch, caplog):
    monkeypatch.setattr(tested, "EXPECTED_EXPONENT_RANGE", (5.0, 6.0))
    with caplog.at_level(logging.WARNING):
        _, fit = tested.convergence_study(10, 40, 10)
    assert not tested.in_expected_range(fit)
    assert "outside the expected range" in caplog.text


def test_convergence_study_fixed_k(study):
    records, _ = study
    fit = tested.fixed_k_fit(records, 1)
    assert 1.2 <= fit.exponent <= 1.4
    assert fit.n_range == (10, 500)


def test_convergence_study_monotonicity(study):
    records, _ = study
    assert tested.monotonicity_violations(records) <= 0.05 * (len(records) - 1)


def test_convergence_study_is_deterministic():
    first, first_fit = tested.convergence_study(10, 60, 25)
    second, second_fit = tested.convergence_study(10, 60, 25)
    assert [r.max_error for r in first] == [r.max_error for r in second]
    assert first_fit == second_fit


def test_convergence_study_errors():
    for grid in ((10, 5, 1), (1, 10, 1), (10, 20, 0)):
        with pytest.raises(ConfigurationError):
            tested.convergence_study(*grid)


def test_fixed_k_fit():
    records = synthetic_records(range(2, 40, 3))
    fit = tested.fixed_k_fit(records, 10)
    npt.assert_allclose(fit.exponent, 2.0, atol=1e-6)
    assert fit.n_range == (11, 38)


def test_monotonicity_violations():
    records = synthetic_records([10, 20, 30])
    assert tested.monotonicity_violations(records) == 0
    records.append(tested.ConvergenceRecord(40, 1.0))
    assert tested.monotonicity_violations(records) == 1


def test_study_table():
    records = synthetic_records([2, 4, 8])
    fit = tested.fit_power_law([2, 4, 8], [r.max_error for r in records])
    table = tested.study_table(records, fit)
    assert table.columns == ("n", "max_error")
    assert table.column("n") == [2, 4, 8]
    assert list(table.comments[-1]) == [
        "exponent",
        "amplitude",
        "rss",
        "violations",
        "expected_range",
    ]
    assert table.comments[-1]["violations"] == 0
    assert table.comments[-1]["expected_range"] is False

    table = tested.study_table(records, fit, k=3)
    assert table.columns == ("n", "max_error", "error_k3")
    assert table.column("error_k3")[0] is None
    assert len(table.comments) == 2
    assert table.comments[0]["k"] == 3
    assert "exponent" in table.comments[-1]
    assert "k" not in table.comments[-1]


def test_zero_locus_data():
    table = tested.zero_locus_data([20, 10, 20])
    assert table.columns == ("n", "k", "re_exact", "im_exact", "re_approx", "im_approx")
    assert len(table.rows) == 30
    assert table.column("n")[:10] == [10] * 10
    assert table.column("k")[10:] == list(range(1, 21))

    table = tested.zero_locus_data([100])
    assert len(table.rows) == 100
    assert np.all(np.diff(table.column("im_exact")) > 0)
    assert np.all(np.array(table.column("re_exact")) < 0)
    assert np.all(np.array(table.column("re_exact")) > -2)

    with pytest.raises(InvalidDegreeError):
        tested.zero_locus_data([1, 10])


def test_real_zero_of():
    assert tested.real_zero_of(ZeroSet(1, np.array([-1.0]), Provenance.NEWTON)) == -1.0
    with pytest.raises(ConsistencyError):
        tested.real_zero_of(record_zero_set())


def test_real_zero_table():
    cubic_roots = np.roots([15, 15, 6, 1])
    expected = float(cubic_roots[np.argmin(np.abs(cubic_roots.imag))].real)

    degrees = list(range(3, 202, 22))
    table = tested.real_zero_table(degrees)
    assert table.column("n") == degrees
    npt.assert_allclose(table.column("alpha_newton")[0], expected, rtol=1e-10)
    npt.assert_allclose(table.column("alpha_approx"), [real_zero_approx(n) for n in degrees])
    npt.assert_allclose(table.column("alpha_reference"), [real_zero_reference(n) for n in degrees])
    assert all(value < 0.5 for value in table.column("n_err_approx"))
    last = dict(zip(table.columns, table.rows[-1]))
    assert last["err_reference"] < last["err_approx"]
    npt.assert_allclose(last["n_err_approx"], last["n"] * last["err_approx"])
    npt.assert_allclose(last["n2_err_approx"], last["n"] ** 2 * last["err_approx"])


def test_real_zero_table_errors():
    with pytest.raises(InvalidDegreeError):
        tested.real_zero_table([3, 4])
    with pytest.raises(InvalidDegreeError):
        tested.real_zero_table([1])


def test_power_sum_table():
    table = tested.power_sum_table([500, 10])
    assert len(table.rows) == 6
    rows = {(row[0], row[1]): dict(zip(table.columns, row)) for row in table.rows}
    assert table.column("n") == [10, 10, 10, 500, 500, 500]

    for n in (10, 500):
        first = rows[(n, 1)]
        assert first["rational"] is None
        npt.assert_allclose(first["direct"], -(n + 1) / n, rtol=1e-12)
        npt.assert_allclose(first["abs_error"], 1 / n, rtol=1e-9)
        npt.assert_allclose(rows[(n, 2)]["rational"], rows[(n, 2)]["direct"], rtol=1e-9)
        assert rows[(n, 3)]["exact"] == 0

    npt.assert_allclose(500 * rows[(500, 2)]["abs_error"], 1 / 42, rtol=0.2)
    assert abs(rows[(500, 3)]["direct"]) * 500**2 < 1


def test_findings_table():
    table = tested.findings_table([10, 3])
    assert table.columns == ("n", "check", "value", "threshold", "status")
    assert len(table.rows) == 18
    assert set(table.column("status")) == {"ok"}
    assert table.comments == [{"checks": 18, "findings": 0}]


def test_cross_method_table():
    table = tested.cross_method_table([2, 50])
    assert table.columns == (
        "n",
        "max_deviation",
        "newton_residual",
        "newton_correction",
        "newton_rounding_ratio",
        "oracle_correction",
        "rounding_radius",
        "status",
    )
    rows = {row[0]: dict(zip(table.columns, row)) for row in table.rows}
    assert list(rows) == [2, 50]
    assert rows[2]["status"] == "ok"
    assert rows[2]["oracle_correction"] <= 1e-12
    assert rows[50]["status"] in ("ok", "rounding")
    for row in rows.values():
        assert row["newton_residual"] <= 1e-12
        assert row["newton_rounding_ratio"] <= 1
    assert sum(table.comments[0].values()) == 2


def test_cross_method_table_reports_failures():
    table = tested.cross_method_table([10], aberth_config=AberthConfig(max_iter=1))
    row = dict(zip(table.columns, table.rows[0]))
    assert row["status"] == "no_convergence"
    assert row["max_deviation"] is None
    assert row["oracle_correction"] is None
    assert row["newton_residual"] <= 1e-12
    assert table.comments == [{"no_convergence": 1}]


def test_gamma_table():
    table = tested.gamma_table([2, 1, 2], [100, 50])
    assert table.columns == ("k", "n", "defect", "scaled_defect")
    assert [(row[0], row[1]) for row in table.rows] == [(1, 50), (2, 50), (1, 100), (2, 100)]
    for _, n, defect, scaled in table.rows:
        npt.assert_allclose(n * defect, scaled)
