from functionals.chord_functionals import chord_functional_lhs, pleijel_prefactor, pleijel_rhs
from functionals.estimates import EstimatorOptions
from utils.base_case import BaseCase
from utils.reports import CaseConfig, VerificationReport


class PleijelCase(BaseCase):
    """
    Pleijel identity in dimension d >= 3: the chord functional of h against
    the boundary-pair integral with prefactor 1/((d-1) omega_d).
    """

    case_name = "thm1"
    case_description = "d-dimensional Pleijel identity for smooth bodies"
    aliases = ("pleijel",)
    uses_prefactor_scale = True
    defaults = {"body": "ball", "dim": 3, "h_power": 3}
    suites = {
        "smoke": [{}, {"body": "ellipsoid:2,1,1"}],
        "full": [{}, {"body": "ellipsoid:2,1,1", "h_power": 3}, {"dim": 4, "h_power": 4}],
    }

    def validate(self, config: CaseConfig) -> None:
        super().validate(config)
        body = self.smooth_body(config)
        self.require(body.dim >= 3, f"{self.case_name} needs d >= 3; use pleijel2d in the plane")

    def evaluate(self, config: CaseConfig, options: EstimatorOptions) -> VerificationReport:
        body = self.smooth_body(config)
        h = self.test_function(config)
        lhs = chord_functional_lhs(body, h, options.substream(0))
        rhs = pleijel_rhs(body, h, options.substream(1), prefactor_scale=config.prefactor_scale)
        prefactor = config.prefactor_scale * pleijel_prefactor(body.dim)
        return self.report(config, lhs, rhs, extras={"prefactor": prefactor})
