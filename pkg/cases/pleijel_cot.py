from functionals.chord_functionals import (
    ambartzumian_correction,
    chord_functional_lhs,
    pleijel_cot_rhs,
)
from functionals.estimates import EstimatorOptions, MCEstimate
from geometry.polytopes import Polytope
from utils.base_case import BaseCase
from utils.reports import CaseConfig, VerificationReport


class PlanarCotangentCase(BaseCase):
    """
    Planar cotangent form of the Pleijel identity. For convex polygons the
    right side gains the exact sum of H over the side lengths.
    """

    case_name = "pleijel-cot"
    aliases = ("ambartzumian",)
    defaults = {"body": "disk", "dim": 2, "h_power": 2}
    suites = {
        "smoke": [{}, {"body": "regular-polygon:6"}],
        "full": [{}, {"body": "regular-polygon:6"}, {"body": "cube"}, {"body": "ellipsoid:2,1"}],
    }

    def validate(self, config: CaseConfig) -> None:
        super().validate(config)
        body = self.body(config)
        self.require(body.dim == 2, f"{self.case_name} is planar, got d = {body.dim}")

    def evaluate(self, config: CaseConfig, options: EstimatorOptions) -> VerificationReport:
        body = self.body(config)
        h = self.test_function(config)
        lhs = chord_functional_lhs(body, h, options.substream(0))
        cot = pleijel_cot_rhs(body, h, options.substream(1))
        if not isinstance(body, Polytope):
            return self.report(config, lhs, cot)
        sides = MCEstimate.exact(ambartzumian_correction(body, h))
        return self.report(config, lhs, cot + sides, terms={"cot": cot, "sides": sides})
