from functionals.chord_functionals import normalization_check
from functionals.estimates import EstimatorOptions
from utils.base_case import BaseCase
from utils.reports import CaseConfig, VerificationReport

INNER_RADIUS = 0.5
ENCLOSING_RADIUS = 1.0


class NormalizationCase(BaseCase):
    """
    Measure of l-flats hitting a ball of radius 1/2, sampled from the flats
    hitting the unit ball, against kappa_{d-l} (1/2)^{d-l}.
    """

    case_name = "normalization"
    defaults = {"dim": 3, "l": 1}
    suites = {
        "smoke": [{}],
        "full": [
            {"dim": 2, "l": 1},
            {},
            {"dim": 3, "l": 2},
            {"dim": 4, "l": 1},
            {"dim": 4, "l": 2},
            {"dim": 4, "l": 3},
        ],
    }

    def validate(self, config: CaseConfig) -> None:
        super().validate(config)
        dim = config.dim or 0
        l = config.l if config.l is not None else 1
        self.require(dim >= 2, f"{self.case_name} needs d >= 2, got {config.dim}")
        self.require(1 <= l <= dim - 1, f"Need 1 <= l <= d - 1, got l = {l}")

    def evaluate(self, config: CaseConfig, options: EstimatorOptions) -> VerificationReport:
        estimate, exact = normalization_check(
            config.dim or 3,
            config.l if config.l is not None else 1,
            INNER_RADIUS,
            ENCLOSING_RADIUS,
            options,
        )
        return self.report(config, estimate, exact)
