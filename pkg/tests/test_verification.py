"""
Tests for running cases and suites.
"""

import math
from unittest.mock import patch

import pytest

from cases.kingman import KingmanCase
from cases.normalization import NormalizationCase
from cases.sphere_product import SphereProductCase
from utils.base_case import CaseConfigError
from utils.case_factory import CaseFactory
from utils.verification import (
    build_config,
    fit_constant,
    run_case,
    run_suite,
    run_suite_async,
    suite_configs,
)

SMALL_SUITE = [KingmanCase, NormalizationCase, SphereProductCase]


@pytest.fixture
def small_suite():
    with patch(
        "utils.verification.CaseFactory.load_cases_from_module", return_value=SMALL_SUITE
    ):
        yield


class TestRunCase:
    def test_build_config_resolves_alias(self):
        config = build_config("pleijel", n_samples=1000)
        assert config.case == "thm1"
        assert config.body == "ball"
        assert config.h_power == 3

    def test_pleijel_ball_passes(self):
        report = run_case(build_config("thm1", n_samples=20_000, seed=1))
        assert report.passed, report.summary_line()
        assert report.extras["prefactor"] == pytest.approx(1.0 / (2.0 * 4.0 * math.pi))

    def test_corrupted_prefactor_fails(self):
        report = run_case(build_config("thm1", n_samples=20_000, seed=1, prefactor_scale=2.0))
        assert not report.passed
        assert abs(report.z) > 4.0

    def test_same_seed_same_report(self):
        config = build_config("kingman", n_samples=5000, seed=4)
        assert run_case(config).to_record() == run_case(config).to_record()

    def test_smooth_case_on_polytope(self):
        with pytest.raises(CaseConfigError):
            run_case(build_config("thm1", body="cube", n_samples=1000))

    def test_bad_flat_dimension(self):
        with pytest.raises(CaseConfigError):
            run_case(build_config("bpf", l=3, n_samples=1000))

    def test_cot_lemma_is_exact(self):
        report = run_case(build_config("cot-lemma", n_samples=40))
        assert report.passed
        assert report.lhs.se == 0.0
        assert report.extras["configurations"] == 40.0

    def test_polytope_pleijel_terms(self):
        report = run_case(build_config("thm2", n_samples=20_000))
        assert report.passed, report.summary_line()
        names = [term.name for term in report.terms]
        assert "cot" in names and "facets" in names

    def test_disk_defect_passes(self):
        report = run_case(build_config("defect2d", body="disk", n_samples=50_000))
        assert report.passed, report.summary_line()
        assert report.rhs.mean == 0.0

    @pytest.mark.parametrize("case", ["kingman", "normalization", "defect2d", "mean-chord"])
    def test_full_suite_entries_are_valid(self, case):
        configs = [config for config in suite_configs("full", n_samples=100) if config.case == case]
        assert len(configs) >= 3
        for config in configs:
            CaseFactory.create_case(case).validate(config)


class TestFitConstant:
    def test_ball(self):
        result = fit_constant(build_config("thm1", n_samples=20_000))
        assert result.theoretical == pytest.approx(1.0 / (8.0 * math.pi))
        assert result.classical == 4.0
        assert abs(result.z) <= 4.0

    def test_needs_pleijel_case(self):
        with pytest.raises(CaseConfigError):
            fit_constant(build_config("kingman", n_samples=1000))


class TestSuites:
    def test_smoke_configs(self):
        configs = suite_configs("smoke", n_samples=1000)
        assert len(configs) == 20
        assert [config.stream_id for config in configs] == list(range(20))
        assert all(config.n_samples == 1000 for config in configs)

    def test_full_suite_is_larger(self):
        assert len(suite_configs("full", n_samples=1000)) > 20

    def test_unknown_suite(self):
        with pytest.raises(CaseConfigError):
            suite_configs("nightly")

    def test_overrides_apply_to_every_case(self):
        configs = suite_configs("smoke", seed=99, n_samples=1000)
        assert {config.seed for config in configs} == {99}
        assert {config.n_samples for config in configs} == {1000}

    def test_prefactor_scale_reaches_only_thm1(self):
        configs = suite_configs("smoke", n_samples=1000, prefactor_scale=3.0)
        scales = {config.case: config.prefactor_scale for config in configs}
        assert scales.pop("thm1") == 3.0
        assert set(scales.values()) == {1.0}

    def test_run_suite(self, small_suite):
        reports = run_suite("smoke", n_samples=5000)
        assert [report.case for report in reports] == [
            "kingman",
            "normalization",
            "sphere-product",
        ]
        assert all(report.passed for report in reports)

    async def test_async_matches_sequential(self, small_suite):
        sequential = run_suite("full", n_samples=3000)
        concurrent = await run_suite_async("full", n_samples=3000)
        assert [r.to_record() for r in concurrent] == [r.to_record() for r in sequential]

    def test_config_errors_become_failures(self):
        class BrokenCase(NormalizationCase):
            suites = {"smoke": [{"l": 5}]}

        with patch(
            "utils.verification.CaseFactory.load_cases_from_module", return_value=[BrokenCase]
        ):
            reports = run_suite("smoke", n_samples=100)
        assert len(reports) == 1
        assert not reports[0].passed
        assert reports[0].error
