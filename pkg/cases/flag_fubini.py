from functionals.estimates import EstimatorOptions
from functionals.lemmas import PLANE_WEIGHTS, flag_fubini_check
from utils.base_case import BaseCase
from utils.reports import CaseConfig, VerificationReport


class FlagFubiniCase(BaseCase):
    """
    Flags of a line inside a plane, integrated planes-first and lines-first.
    The optional plane weight `tilt` makes the integrand depend on the plane.
    """

    case_name = "flags"
    aliases = ("flag-fubini",)
    defaults = {"body": "ball", "dim": 3, "h_power": 3, "plane_weight": "one"}
    suites = {
        "smoke": [{}, {"plane_weight": "tilt"}],
        "full": [{}, {"plane_weight": "tilt"}, {"body": "ellipsoid:2,1,1", "plane_weight": "tilt"}],
    }

    def validate(self, config: CaseConfig) -> None:
        super().validate(config)
        body = self.body(config)
        self.require(body.dim >= 3, f"{self.case_name} needs d >= 3, got {body.dim}")
        self.require(
            (config.plane_weight or "one") in PLANE_WEIGHTS,
            f"Unknown plane weight '{config.plane_weight}', expected one of {PLANE_WEIGHTS}",
        )

    def evaluate(self, config: CaseConfig, options: EstimatorOptions) -> VerificationReport:
        planes_first, lines_first = flag_fubini_check(
            self.body(config),
            self.test_function(config),
            options,
            plane_weight_kind=config.plane_weight or "one",
        )
        return self.report(config, planes_first, lines_first)
