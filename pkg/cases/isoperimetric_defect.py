from functionals.chord_functionals import isoperimetric_defect
from functionals.estimates import EstimatorOptions
from geometry.bodies import Ellipsoid
from utils.base_case import BaseCase
from utils.reports import CaseConfig, VerificationReport


class IsoperimetricDefectCase(BaseCase):
    """|dK|^2 - 4 pi |K| as a boundary-pair integral, for planar ellipses."""

    case_name = "defect2d"
    aliases = ("isoperimetric-defect",)
    defaults = {"body": "ellipsoid:2,1", "dim": 2}
    suites = {
        "smoke": [{}],
        "full": [{}, {"body": "ellipsoid:4,1"}, {"body": "disk"}],
    }

    def validate(self, config: CaseConfig) -> None:
        super().validate(config)
        body = self.smooth_body(config)
        self.require(
            isinstance(body, Ellipsoid) and body.dim == 2,
            f"{self.case_name} needs a planar ellipse or disk",
        )

    def evaluate(self, config: CaseConfig, options: EstimatorOptions) -> VerificationReport:
        body = self.smooth_body(config)
        lhs, rhs = isoperimetric_defect(body, options)
        return self.report(config, lhs, rhs)
