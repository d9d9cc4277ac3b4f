from functionals.chord_functionals import mean_chord_check
from functionals.estimates import EstimatorOptions
from utils.base_case import BaseCase
from utils.reports import CaseConfig, VerificationReport


class MeanChordCase(BaseCase):
    """The integral of the chord length over lines equals the volume."""

    case_name = "mean-chord"
    defaults = {"body": "cube", "dim": 3}
    suites = {
        "smoke": [{}],
        "full": [
            {},
            {"body": "regular-simplex"},
            {"body": "octahedron"},
            {"body": "ellipsoid:2,1,1"},
            {"body": "regular-polygon:6", "dim": 2},
        ],
    }

    def validate(self, config: CaseConfig) -> None:
        super().validate(config)
        self.body(config)

    def evaluate(self, config: CaseConfig, options: EstimatorOptions) -> VerificationReport:
        lhs, rhs = mean_chord_check(self.body(config), options)
        return self.report(config, lhs, rhs)
