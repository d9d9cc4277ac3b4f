from functionals.chord_functionals import chord_functional_lhs, pleijel_rhs_2d
from functionals.estimates import EstimatorOptions
from utils.base_case import BaseCase
from utils.reports import CaseConfig, VerificationReport


class PlanarPleijelCase(BaseCase):
    """Planar Pleijel identity for smooth convex domains."""

    case_name = "pleijel2d"
    aliases = ("pleijel-planar",)
    defaults = {"body": "disk", "dim": 2, "h_power": 2}
    suites = {
        "smoke": [{}, {"body": "ellipsoid:2,1"}],
        "full": [{}, {"body": "ellipsoid:2,1"}, {"body": "ellipsoid:3,1", "h_power": 3}],
    }

    def validate(self, config: CaseConfig) -> None:
        super().validate(config)
        body = self.smooth_body(config)
        self.require(body.dim == 2, f"{self.case_name} is planar, got d = {body.dim}")

    def evaluate(self, config: CaseConfig, options: EstimatorOptions) -> VerificationReport:
        body = self.smooth_body(config)
        h = self.test_function(config)
        lhs = chord_functional_lhs(body, h, options.substream(0))
        rhs = pleijel_rhs_2d(body, h, options.substream(1))
        return self.report(config, lhs, rhs)
