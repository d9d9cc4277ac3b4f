from functionals.estimates import EstimatorOptions
from functionals.point_identities import mixed_point_check
from utils.base_case import BaseCase
from utils.reports import CaseConfig, VerificationReport


class MixedPointsCase(BaseCase):
    """
    Mixed formula for k boundary and l+1-k interior points of a smooth body,
    integrated over l-flats.
    """

    case_name = "thm3"
    aliases = ("mixed-points",)
    defaults = {
        "body": "ball",
        "dim": 3,
        "l": 1,
        "k": 1,
        "point_function": "distance",
        "point_power": 1.0,
    }
    suites = {
        "smoke": [{}],
        "full": [{}, {"k": 2}, {"l": 2, "k": 0}, {"l": 2, "k": 1}],
    }

    def validate(self, config: CaseConfig) -> None:
        super().validate(config)
        body = self.smooth_body(config)
        l = config.l if config.l is not None else 1
        k = config.k if config.k is not None else 0
        self.require(1 <= l <= body.dim - 1, f"Need 1 <= l <= d - 1, got l = {l}")
        self.require(k <= l + 1, f"Need 0 <= k <= l + 1, got k = {k}, l = {l}")

    def evaluate(self, config: CaseConfig, options: EstimatorOptions) -> VerificationReport:
        body = self.smooth_body(config)
        f = self.point_function(config)
        lhs, rhs = mixed_point_check(body, config.l or 1, config.k or 0, f, options)
        return self.report(config, lhs, rhs)
