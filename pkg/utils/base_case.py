import logging
import time
from typing import Any, ClassVar, Dict, List, Optional, Tuple

from pydantic import ValidationError

from functionals.estimates import EstimatorOptions, MCEstimate
from functionals.integrands import PointFunction, TestFunction
from geometry.bodies import ConvexBody
from geometry.builtins import parse_body_spec
from geometry.errors import BodySpecError, GeometryError, UnsupportedSectionError
from geometry.polytopes import Polytope
from measures.rng import RngStream
from utils.config import settings
from utils.reports import CaseConfig, VerificationReport

logger = logging.getLogger(__name__)


class CaseError(Exception):
    """Evaluation failure; the case is reported as failed."""

    pass


class CaseConfigError(Exception):
    """Invalid parameter combination; never retried, maps to a usage error."""

    pass


class BaseCase:
    """Base class for all verification cases with common functionality."""

    case_name: str = "base"
    case_description: str = "Base case implementation with common functionality."
    aliases: Tuple[str, ...] = ()
    version: str = "1.0.0"

    # Parameter defaults - overridden by subclasses
    defaults: ClassVar[Dict[str, Any]] = {}
    # Per-suite parameter overrides; one report per entry
    suites: ClassVar[Dict[str, List[Dict[str, Any]]]] = {"smoke": [{}], "full": [{}]}
    # Only cases that scale a prefactor accept prefactor_scale != 1
    uses_prefactor_scale: ClassVar[bool] = False

    def __init__(self, batch_size: Optional[int] = None, max_workers: Optional[int] = None):
        """Initialize the case.

        Args:
            batch_size: Samples per vectorized batch (defaults to settings.BATCH_SIZE)
            max_workers: Thread pool width for shards (defaults to settings.MAX_WORKERS)
        """
        self.batch_size = settings.BATCH_SIZE if batch_size is None else batch_size
        self.max_workers = settings.MAX_WORKERS if max_workers is None else max_workers
        logger.debug(f"Initialized {self.case_name} (v{self.version})")

    def build_config(self, **overrides: Any) -> CaseConfig:
        """Merge settings, case defaults and explicit overrides (None means unset).

        Raises:
            CaseConfigError: If the merged parameters fail validation
        """
        values: Dict[str, Any] = {
            "seed": settings.SEED,
            "shards": settings.SHARDS,
            "z_threshold": settings.Z_THRESHOLD,
            "rejection_cap": settings.REJECTION_CAP,
        }
        values.update(self.defaults)
        values.update({key: value for key, value in overrides.items() if value is not None})
        values["case"] = self.case_name
        try:
            return CaseConfig(**values)
        except ValidationError as e:
            raise CaseConfigError(f"Invalid parameters for {self.case_name}: {e}") from e

    def suite_configs(self, suite: str, **overrides: Any) -> List[CaseConfig]:
        """One config per suite entry; a suite-wide prefactor_scale reaches only its users."""
        if not self.uses_prefactor_scale:
            overrides = {key: value for key, value in overrides.items() if key != "prefactor_scale"}
        return [
            self.build_config(**{**entry, **overrides}) for entry in self.suites.get(suite, [])
        ]

    def options(self, config: CaseConfig) -> EstimatorOptions:
        return EstimatorOptions(
            n_samples=config.n_samples,
            stream=RngStream(seed=config.seed, stream_id=config.stream_id),
            shards=config.shards,
            batch_size=self.batch_size,
            max_workers=self.max_workers,
        )

    @staticmethod
    def require(condition: bool, message: str) -> None:
        if not condition:
            raise CaseConfigError(message)

    def body(self, config: CaseConfig) -> ConvexBody:
        """The body named by the config.

        Raises:
            CaseConfigError: If the body spec is missing or invalid
        """
        self.require(config.body is not None, f"Case {self.case_name} needs --body")
        try:
            return parse_body_spec(config.body, config.dim)
        except BodySpecError as e:
            raise CaseConfigError(str(e)) from e

    def smooth_body(self, config: CaseConfig) -> ConvexBody:
        body = self.body(config)
        self.require(
            body.smooth, f"Case {self.case_name} needs a smooth body, got {body.body_name}"
        )
        return body

    def polytope(self, config: CaseConfig) -> Polytope:
        body = self.body(config)
        self.require(
            isinstance(body, Polytope),
            f"Case {self.case_name} needs a polytope, got {body.body_name}",
        )
        assert isinstance(body, Polytope)
        return body

    @staticmethod
    def test_function(config: CaseConfig) -> TestFunction:
        return TestFunction(config.h_power if config.h_power is not None else 1)

    @staticmethod
    def point_function(config: CaseConfig) -> PointFunction:
        return PointFunction(
            config.point_function or "distance",
            1.0 if config.point_power is None else config.point_power,
        )

    def validate(self, config: CaseConfig) -> None:
        """Check the case's preconditions.

        Raises:
            CaseConfigError: If the configuration is invalid
        """
        self.require(
            config.case == self.case_name or config.case in self.aliases,
            f"Config for case '{config.case}' passed to {self.case_name}",
        )
        self.require(
            self.uses_prefactor_scale or config.prefactor_scale == 1.0,
            f"Case {self.case_name} has no prefactor to scale; prefactor_scale applies to thm1",
        )

    def evaluate(self, config: CaseConfig, options: EstimatorOptions) -> VerificationReport:
        """Estimate both sides and build the report.

        Override this method in subclasses.
        """
        raise NotImplementedError(f"{self.case_name} does not implement evaluate")

    def report(
        self,
        config: CaseConfig,
        lhs: MCEstimate,
        rhs: MCEstimate,
        terms: Optional[Dict[str, MCEstimate]] = None,
        extras: Optional[Dict[str, float]] = None,
        exact_tolerance: float = 1e-12,
    ) -> VerificationReport:
        return VerificationReport.compare(
            config,
            lhs,
            rhs,
            terms=terms,
            extras=extras,
            low_power_samples=settings.LOW_POWER_SAMPLES,
            exact_tolerance=exact_tolerance,
        )

    def run(self, config: CaseConfig) -> VerificationReport:
        """Validate, evaluate and time the case.

        Raises:
            CaseConfigError: If the configuration is invalid; evaluation errors
                are turned into failing reports instead
        """
        logger.info(f"[{self.case_name}] Starting with N={config.n_samples}, seed={config.seed}")
        start = time.perf_counter()
        try:
            self.validate(config)
            report = self.evaluate(config, self.options(config))
        except CaseConfigError as e:
            # Configuration errors are not retried
            logger.error(f"[{self.case_name}] Invalid configuration: {str(e)}")
            raise
        except (ValueError, TypeError, UnsupportedSectionError) as e:
            # Preconditions of the estimators
            logger.error(f"[{self.case_name}] Invalid configuration: {str(e)}")
            raise CaseConfigError(str(e)) from e
        except (CaseError, GeometryError) as e:
            logger.error(f"[{self.case_name}] Evaluation failed: {str(e)}", exc_info=True)
            report = VerificationReport.failure(config, str(e))
        except Exception as e:
            logger.error(f"[{self.case_name}] Unexpected error: {str(e)}", exc_info=True)
            report = VerificationReport.failure(config, f"Unexpected error: {str(e)}")

        report.seconds = time.perf_counter() - start
        logger.info(
            f"[{self.case_name}] Finished in {report.seconds:.2f}s: "
            f"z={report.z:+.2f}, pass={report.passed}"
        )
        if report.low_power:
            logger.warning(
                f"[{self.case_name}] Low power: N={config.n_samples} is below "
                f"{settings.LOW_POWER_SAMPLES}, the comparison is weak"
            )
        if report.rejections >= config.rejection_cap:
            logger.warning(
                f"[{self.case_name}] Rejection fraction {report.rejections:.2e} "
                f"exceeds the cap {config.rejection_cap:.0e}"
            )
        return report
