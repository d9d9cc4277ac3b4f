"""
Tests for verification reports and their serialization.
"""

import csv
import json
import math

import pytest
from pydantic import ValidationError

from functionals.estimates import MCEstimate
from utils.reports import (
    CSV_COLUMNS,
    CaseConfig,
    VerificationReport,
    load_reports,
    render_reports,
    write_reports,
)


def _estimate(mean: float, se: float, n: int = 10_000, rejections: int = 0) -> MCEstimate:
    return MCEstimate(
        mean=mean, standard_error=se, sample_count=n, degenerate_rejections=rejections
    )


@pytest.fixture
def config():
    return CaseConfig(case="thm1", body="ball", dim=3, h_power=3, n_samples=10_000)


class TestCaseConfig:
    def test_defaults(self):
        config = CaseConfig(case="kingman")
        assert config.seed == 7
        assert config.prefactor_scale == 1.0
        assert config.stream_id == 0

    def test_rejects_unknown_fields(self):
        with pytest.raises(ValidationError):
            CaseConfig(case="thm1", radius=2.0)

    def test_rejects_bad_values(self):
        with pytest.raises(ValidationError):
            CaseConfig(case="thm1", n_samples=0)
        with pytest.raises(ValidationError):
            CaseConfig(case="thm1", z_threshold=-1.0)

    def test_frozen(self):
        config = CaseConfig(case="thm1")
        with pytest.raises(ValidationError):
            config.seed = 3


class TestCompare:
    def test_agreeing_sides_pass(self, config):
        report = VerificationReport.compare(config, _estimate(1.0, 0.01), _estimate(1.01, 0.01))
        assert report.passed
        assert report.z == pytest.approx(-0.01 / math.sqrt(2e-4))
        assert report.error is None

    def test_distant_sides_fail(self, config):
        report = VerificationReport.compare(config, _estimate(1.0, 0.01), _estimate(2.0, 0.01))
        assert not report.passed
        assert abs(report.z) > config.z_threshold

    def test_rejections_above_cap_fail(self, config):
        lhs = _estimate(1.0, 0.01, n=10_000, rejections=50)
        report = VerificationReport.compare(config, lhs, _estimate(1.0, 0.01))
        assert report.rejections == pytest.approx(5e-3)
        assert not report.passed

    def test_rejections_in_terms_count(self, config):
        terms = {"cot": _estimate(0.5, 0.01, rejections=100)}
        report = VerificationReport.compare(
            config, _estimate(1.0, 0.01), _estimate(1.0, 0.01), terms=terms
        )
        assert report.terms[0].name == "cot"
        assert not report.passed

    def test_low_power_flag(self):
        config = CaseConfig(case="thm1", n_samples=100)
        report = VerificationReport.compare(
            config, _estimate(1.0, 0.1, n=100), _estimate(1.0, 0.1, n=100), low_power_samples=1000
        )
        assert report.low_power

    def test_exact_sides(self, config):
        report = VerificationReport.compare(
            config, MCEstimate.exact(1e-10), MCEstimate.exact(0.0), exact_tolerance=1e-8
        )
        assert report.passed
        strict = VerificationReport.compare(config, MCEstimate.exact(1e-3), MCEstimate.exact(0.0))
        assert not strict.passed

    def test_failure(self, config):
        report = VerificationReport.failure(config, "boom")
        assert not report.passed
        assert math.isnan(report.z)
        assert report.summary_line() == "FAIL thm1: boom"


class TestRendering:
    def test_json_round_trip(self, config, tmp_path):
        reports = [
            VerificationReport.compare(
                config,
                _estimate(1.0, 0.01),
                _estimate(1.0, 0.01),
                terms={"facets": _estimate(0.2, 0.001)},
                extras={"prefactor": 0.125},
            ),
            VerificationReport.failure(config, "no usable samples"),
        ]
        path = write_reports(reports, str(tmp_path / "nested" / "out.json"))
        loaded = load_reports(path)
        assert loaded[0].passed
        assert loaded[0].terms[0].name == "facets"
        assert loaded[0].extras == {"prefactor": 0.125}
        assert math.isnan(loaded[1].lhs.mean)
        assert loaded[1].error == "no usable samples"

    def test_json_uses_pass_key(self, config):
        report = VerificationReport.compare(config, _estimate(1.0, 0.01), _estimate(1.0, 0.01))
        record = json.loads(render_reports([report]))[0]
        assert record["pass"] is True
        assert "passed" not in record

    def test_timings_only_on_request(self, config):
        report = VerificationReport.compare(config, _estimate(1.0, 0.01), _estimate(1.0, 0.01))
        report.seconds = 1.5
        assert "seconds" not in json.loads(render_reports([report]))[0]
        assert json.loads(render_reports([report], timings=True))[0]["seconds"] == 1.5

    def test_rendering_is_deterministic(self, config):
        report = VerificationReport.compare(config, _estimate(1.0, 0.01), _estimate(1.0, 0.01))
        first = render_reports([report])
        report.seconds = 9.0
        assert render_reports([report]) == first

    def test_csv(self, config):
        report = VerificationReport.compare(config, _estimate(1.0, 0.01), _estimate(1.0, 0.01))
        rows = list(csv.DictReader(render_reports([report], "csv").splitlines()))
        assert list(rows[0].keys()) == CSV_COLUMNS
        assert rows[0]["case"] == "thm1"
        assert float(rows[0]["lhs"]) == 1.0
        assert rows[0]["pass"] == "True"

    def test_unknown_format(self, config):
        with pytest.raises(ValueError):
            render_reports([VerificationReport.failure(config, "x")], "yaml")
