"""
Running cases and suites.

Suites collect the shipped configurations of every registered case and give
each its own stream id, so the sequential and the concurrent runner draw the
same samples and produce identical reports.
"""

import asyncio
import logging
from dataclasses import dataclass
from typing import Any, List, Optional

from functionals.chord_functionals import (
    chord_functional_lhs,
    pleijel_pair_integral,
    pleijel_prefactor,
)
from functionals.estimates import MCEstimate, z_score
from utils.base_case import BaseCase, CaseConfigError
from utils.case_factory import CaseFactory
from utils.config import settings
from utils.reports import CaseConfig, VerificationReport

logger = logging.getLogger(__name__)

SUITE_NAMES = ("smoke", "full")

# Prefactor of the classical three-dimensional statement of the identity
CLASSICAL_3D_CONSTANT = 4.0


def build_config(case_id: str, **overrides: Any) -> CaseConfig:
    """A validated config for a case name or alias, filled with the case's defaults."""
    return CaseFactory.create_case(case_id).build_config(**overrides)


def run_case(config: CaseConfig) -> VerificationReport:
    """Run one case.

    Raises:
        CaseConfigError: If the case is unknown or its parameters are invalid
    """
    return CaseFactory.create_case(config.case).run(config)


@dataclass(frozen=True)
class FitResult:
    """Measured Pleijel prefactor against its theoretical value.

    Attributes:
        ratio: Chord side divided by the boundary-pair integral without prefactor
        theoretical: 1 / ((d - 1) omega_d)
        classical: The constant quoted for the classical identity (d = 3 only)
        z: z-score of the ratio against the theoretical value
    """

    config: CaseConfig
    ratio: MCEstimate
    theoretical: float
    classical: Optional[float]
    z: float


def fit_constant(config: CaseConfig) -> FitResult:
    """Estimate the Pleijel prefactor as a ratio of the two unscaled sides.

    Raises:
        CaseConfigError: If the config is not a Pleijel case on a smooth body
    """
    case = CaseFactory.create_case(config.case)
    if case.case_name != "thm1":
        raise CaseConfigError(f"Constant fitting needs the thm1 case, got '{config.case}'")
    case.validate(config)
    body = case.smooth_body(config)
    h = case.test_function(config)
    options = case.options(config)

    lhs = chord_functional_lhs(body, h, options.substream(0))
    raw = pleijel_pair_integral(body, h, options.substream(1))
    ratio = lhs.ratio(raw)
    theoretical = pleijel_prefactor(body.dim)
    result = FitResult(
        config=config,
        ratio=ratio,
        theoretical=theoretical,
        classical=CLASSICAL_3D_CONSTANT if body.dim == 3 else None,
        z=z_score(ratio, MCEstimate.exact(theoretical)),
    )
    logger.info(
        f"Fitted prefactor {ratio.mean:.6g} ± {ratio.standard_error:.2g} "
        f"against {theoretical:.6g} (z={result.z:+.2f})"
    )
    return result


def suite_configs(
    suite: str,
    seed: Optional[int] = None,
    shards: Optional[int] = None,
    n_samples: Optional[int] = None,
    prefactor_scale: Optional[float] = None,
    z_threshold: Optional[float] = None,
) -> List[CaseConfig]:
    """Every shipped configuration of every case, with disjoint stream ids.

    Raises:
        CaseConfigError: If the suite name is unknown
    """
    if suite not in SUITE_NAMES:
        raise CaseConfigError(f"Unknown suite '{suite}', expected one of {SUITE_NAMES}")
    if n_samples is None:
        n_samples = settings.SMOKE_SAMPLES if suite == "smoke" else settings.FULL_SAMPLES
    overrides = {
        "seed": seed,
        "shards": shards,
        "n_samples": n_samples,
        "prefactor_scale": prefactor_scale,
        "z_threshold": z_threshold,
    }
    configs: List[CaseConfig] = []
    for case_class in CaseFactory.load_cases_from_module("cases"):
        case: BaseCase = case_class()
        for config in case.suite_configs(suite, **overrides):
            configs.append(config.model_copy(update={"stream_id": len(configs)}))
    logger.info(f"Suite '{suite}' has {len(configs)} configurations at N={n_samples}")
    return configs


def _run_suite_case(config: CaseConfig) -> VerificationReport:
    try:
        return run_case(config)
    except CaseConfigError as e:
        return VerificationReport.failure(config, str(e))


def run_suite(suite: str, **kwargs: Any) -> List[VerificationReport]:
    """Run a suite sequentially. Keyword arguments are passed to `suite_configs`."""
    reports = [_run_suite_case(config) for config in suite_configs(suite, **kwargs)]
    _log_suite_summary(suite, reports)
    return reports


async def run_suite_async(suite: str, **kwargs: Any) -> List[VerificationReport]:
    """Run the cases of a suite concurrently; reports keep the suite order."""
    configs = suite_configs(suite, **kwargs)
    reports = await asyncio.gather(
        *(asyncio.to_thread(_run_suite_case, config) for config in configs)
    )
    _log_suite_summary(suite, list(reports))
    return list(reports)


def _log_suite_summary(suite: str, reports: List[VerificationReport]) -> None:
    failed = [report.case for report in reports if not report.passed]
    if failed:
        logger.warning(f"Suite '{suite}': {len(failed)} of {len(reports)} failed: {failed}")
    else:
        logger.info(f"Suite '{suite}': all {len(reports)} cases passed")
