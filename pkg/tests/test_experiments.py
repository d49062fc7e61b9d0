"""Scaling experiments: configuration, slope fitting, verdicts, persistence,
and the four verification suites."""

import json
from fractions import Fraction

import pytest

from fractalwave.experiments import (
    RunConfig,
    fit_exponent,
    load,
    measured_csv,
    persist,
    predicted_exponent,
    run_from_json,
    run_scaling,
    run_to_json,
    verify_bilinear_necessity,
    verify_locally_constant,
    verify_marginal_divergence,
    verify_whitney,
)


# --- fitting -----------------------------------------------------------------


def test_fit_exact_line():
    slope, intercept, resid = fit_exponent([(j, 0.5 * j + 1.0) for j in range(3, 9)])
    assert slope == pytest.approx(0.5, abs=1e-12)
    assert intercept == pytest.approx(1.0, abs=1e-12)
    assert resid == pytest.approx(0.0, abs=1e-12)


def test_fit_constant_is_flat():
    slope, _, resid = fit_exponent([(j, 2.25) for j in (4, 5, 6, 7)])
    assert slope == pytest.approx(0.0, abs=1e-12)
    assert resid == pytest.approx(0.0, abs=1e-12)


def test_fit_quadratic_residual():
    # y = j^2 on j = 1..4: least squares gives slope 5, intercept -5, RMS 1
    slope, intercept, resid = fit_exponent([(j, j * j) for j in (1, 2, 3, 4)])
    assert slope == pytest.approx(5.0, abs=1e-12)
    assert intercept == pytest.approx(-5.0, abs=1e-12)
    assert resid == pytest.approx(1.0, abs=1e-12)


def test_fit_needs_three_samples():
    with pytest.raises(ValueError):
        fit_exponent([(1, 1.0), (2, 2.0)])


# --- configuration -----------------------------------------------------------


def test_config_requires_exact_rationals():
    with pytest.raises(TypeError):
        RunConfig(family="knapp", p=2.5, q="5")
    cfg = RunConfig(family="knapp", p="5/2", q="5")
    assert cfg.p == Fraction(5, 2)
    assert isinstance(cfg.q, Fraction)


def test_config_validation():
    with pytest.raises(ValueError):
        RunConfig(family="plane", p="2", q="2")
    with pytest.raises(ValueError):
        RunConfig(family="knapp", p="2", q="2", set_kind="random")
    with pytest.raises(ValueError):
        RunConfig(family="knapp", p="2", q="2", tolerance=0.6)
    with pytest.raises(ValueError):
        RunConfig(family="knapp", p="2", q="2", j_min=4, j_max=5)
    with pytest.raises(ValueError):  # alias guard: 2^(j_max+2) > nyquist
        RunConfig(family="knapp", p="2", q="2", j_max=8, n=1024)
    with pytest.raises(ValueError):  # single-time offset must land in (1, 2]
        RunConfig(family="knapp", p="2", q="2", set_kind="single_time", time_L=40.0)


def test_config_json_roundtrip_rejects_unknown_fields():
    cfg = RunConfig(family="annulus", p="1", q="16", alpha="1/2", label="x")
    assert RunConfig.from_json(cfg.to_json()) == cfg
    bad = dict(cfg.to_json(), extra_knob=3)
    with pytest.raises(ValueError, match="unknown"):
        RunConfig.from_json(bad)


def test_predicted_exponents():
    assert predicted_exponent(RunConfig(family="radial_focusing", p="4", q="4")) == Fraction(1, 4)
    assert predicted_exponent(RunConfig(family="knapp", p="5/2", q="5")) == Fraction(1, 2)
    assert predicted_exponent(RunConfig(family="annulus", p="1", q="16")) == Fraction(3, 2)
    assert predicted_exponent(
        RunConfig(family="annulus", p="1", q="16", alpha="1/2")
    ) == Fraction(47, 32)


# --- quick scaling runs (n = 1024, three levels each) ------------------------


def _quick(**kw):
    kw.setdefault("j_min", 4)
    kw.setdefault("j_max", 6)
    kw.setdefault("n", 1024)
    return RunConfig(**kw)


def test_isometry_run_is_consistent():
    # L^2 -> L^2 at a single time is exactly norm-preserving: slope 0 = predicted
    run = run_scaling(_quick(family="radial_focusing", p="2", q="2", set_kind="single_time"))
    assert run.fitted_slope == pytest.approx(0.0, abs=1e-4)
    assert run.residual == pytest.approx(0.0, abs=1e-4)
    assert run.predicted == 0
    assert run.verdict == "consistent"


def test_counting_excess_is_inconclusive():
    # over the full Cantor set the ell^2 time sum contributes #E^(1/2) = 2^(k/2)
    # with k = j - 4, an exact excess of 1/2 over the single-time prediction
    run = run_scaling(_quick(family="radial_focusing", p="2", q="2", set_kind="cantor"))
    assert run.fitted_slope == pytest.approx(0.5, abs=1e-4)
    assert run.verdict == "inconclusive"
    assert run.time_sets == ((4, 1), (5, 2), (6, 4))


def test_flat_family_below_prediction_is_flagged():
    run = run_scaling(_quick(family="annulus", p="2", q="2", set_kind="single_time"))
    assert run.fitted_slope == pytest.approx(0.0, abs=1e-4)
    assert run.predicted == Fraction(1, 2)
    assert run.verdict == "lower_bound_violated"


def test_negative_predicted_slope_tracked():
    run = run_scaling(_quick(family="radial_focusing", p="4", q="2", set_kind="single_time"))
    assert run.predicted == Fraction(-1, 4)
    assert run.fitted_slope == pytest.approx(-0.25, abs=0.01)
    assert run.verdict == "consistent"


def test_run_is_deterministic():
    cfg = _quick(family="knapp", p="1", q="2", set_kind="single_time")
    a = run_scaling(cfg)
    b = run_scaling(cfg)
    assert a.measured == b.measured
    assert a.fitted_slope == b.fitted_slope
    assert a == b


# --- persistence -------------------------------------------------------------


@pytest.fixture(scope="module")
def sample_run():
    return run_scaling(
        RunConfig(
            family="annulus", p="2", q="2", set_kind="single_time",
            j_min=4, j_max=6, n=1024, label="sample",
        )
    )


def test_json_roundtrip(sample_run):
    assert run_from_json(run_to_json(sample_run)) == sample_run
    with pytest.raises(ValueError, match="missing field"):
        run_from_json({"config": sample_run.config.to_json()})


def test_persist_and_load(tmp_path, sample_run):
    json_path, csv_path = persist(sample_run, tmp_path)
    assert json_path.name == "sample.json"
    assert csv_path.name == "sample.csv"
    assert load(json_path) == sample_run
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "j,log2_ratio,set_size"
    assert len(lines) == 4


def test_persist_stem_from_exponents(tmp_path):
    run = run_scaling(
        RunConfig(family="knapp", p="5/2", q="5", set_kind="single_time",
                  j_min=4, j_max=6, n=1024)
    )
    json_path, _ = persist(run, tmp_path)
    assert json_path.name == "knapp_5over2_5.json"


def test_load_reports_line_and_column(tmp_path):
    bad = tmp_path / "broken.json"
    bad.write_text('{"config": }')
    with pytest.raises(ValueError, match=r":1:12:"):
        load(bad)


def test_csv_matches_measurements(sample_run):
    rows = measured_csv(sample_run).splitlines()[1:]
    assert len(rows) == len(sample_run.measured)
    for row, (j, y) in zip(rows, sample_run.measured):
        got_j, got_y, got_n = row.split(",")
        assert int(got_j) == j
        assert float(got_y) == pytest.approx(y, abs=1e-11)
        assert int(got_n) == dict(sample_run.time_sets)[j]


# --- verification suites -----------------------------------------------------


def test_marginal_divergence_suite():
    for alpha in (Fraction(1), Fraction(5, 6)):
        rep = verify_marginal_divergence(alpha, range(2, 9))
        assert rep.passed
        assert len(rep.entries) == 7
        assert all(0.25 <= ratio <= 4.0 for _, ratio, _ in rep.entries)
        per2k = [x for _, _, x in rep.entries]
        assert per2k == sorted(per2k)  # the logarithmic factor keeps growing
    with pytest.raises(ValueError):
        verify_marginal_divergence(1, range(0, 5))


def test_locally_constant_suite():
    rep = verify_locally_constant(range(3, 6), M=4)
    assert rep.passed
    assert rep.order == 4
    assert len(rep.c_values) == 9  # 3 levels x 3 offsets
    assert rep.certified_c == max(c for _, _, c in rep.c_values)
    # the symbol depends on j and dt only through u = 2^j dt, so the dt = 0
    # rows are bitwise identical across levels
    at_zero = [c for _, dt, c in rep.c_values if dt == 0.0]
    assert len(set(at_zero)) == 1


def test_whitney_suite():
    rep = verify_whitney(nu_max=4)
    assert rep.passed
    assert rep.coverage_exact
    assert rep.band == pytest.approx((0.25, 0.5), abs=1e-12)
    assert rep.partition_defect <= 1e-8
    assert rep.orthogonality_defect <= 1e-8


def test_bilinear_necessity_suite():
    rep = verify_bilinear_necessity()
    assert rep.passed
    assert rep.angular_exponent == pytest.approx(1.0, abs=0.2)
    assert rep.squashed_exponent == pytest.approx(3.0, abs=0.2)
    assert rep.angular_q == Fraction(4)
    assert rep.squashed_q == Fraction(8, 3)
    assert len(rep.statistics) == 6
    with pytest.raises(ValueError):
        verify_bilinear_necessity(delta_range=(1 / 8, 1 / 16))
