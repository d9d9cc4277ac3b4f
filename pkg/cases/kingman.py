from functionals.estimates import EstimatorOptions
from functionals.point_identities import kingman_check
from utils.base_case import BaseCase
from utils.reports import CaseConfig, VerificationReport


class KingmanCase(BaseCase):
    """Moments of the interior-pair distance as a chord functional."""

    case_name = "kingman"
    defaults = {"body": "ball", "dim": 3, "moment": 1}
    suites = {
        "smoke": [{}],
        "full": [
            {},
            {"moment": 0},
            {"moment": 2},
            {"body": "disk", "dim": 2},
            {"body": "cube", "moment": 2},
        ],
    }

    def validate(self, config: CaseConfig) -> None:
        super().validate(config)
        self.body(config)

    def evaluate(self, config: CaseConfig, options: EstimatorOptions) -> VerificationReport:
        lhs, rhs = kingman_check(self.body(config), config.moment or 0, options)
        return self.report(config, lhs, rhs)
