from functionals.chord_functionals import zahle_two_point_check
from functionals.estimates import EstimatorOptions
from utils.base_case import BaseCase
from utils.reports import CaseConfig, VerificationReport


class ZahleTwoPointCase(BaseCase):
    """Two-point Zähle formula: chord endpoints against boundary point pairs."""

    case_name = "zahle2"
    aliases = ("zahle",)
    defaults = {"body": "ball", "dim": 3, "point_function": "distance", "point_power": 3.0}
    suites = {
        "smoke": [{}],
        "full": [{}, {"body": "ellipsoid:2,1,1"}, {"point_power": 2.0}],
    }

    def validate(self, config: CaseConfig) -> None:
        super().validate(config)
        self.smooth_body(config)

    def evaluate(self, config: CaseConfig, options: EstimatorOptions) -> VerificationReport:
        body = self.smooth_body(config)
        lhs, rhs = zahle_two_point_check(body, self.point_function(config), options)
        return self.report(config, lhs, rhs)
