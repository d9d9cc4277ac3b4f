from functionals.estimates import EstimatorOptions
from functionals.point_identities import corollary_check
from utils.base_case import BaseCase
from utils.reports import CaseConfig, VerificationReport


class CorollaryCase(BaseCase):
    """
    Moment of one boundary and one interior point against the chord integral
    with endpoint weights 1/sin a_1 + 1/sin a_2. Passes against the derived
    constant; the classical constant and the fitted one are reported as extras.
    """

    case_name = "corollary"
    aliases = ("boundary-interior-moment",)
    defaults = {"body": "ball", "dim": 3, "moment": 1}
    suites = {
        "smoke": [{}],
        "full": [{}, {"body": "disk", "dim": 2, "moment": 0}, {"body": "ellipsoid:2,1,1"}],
    }

    def validate(self, config: CaseConfig) -> None:
        super().validate(config)
        self.body(config)

    def evaluate(self, config: CaseConfig, options: EstimatorOptions) -> VerificationReport:
        result = corollary_check(self.body(config), config.moment or 0, options)
        extras = {
            "derived_constant": result.derived_constant,
            "stated_constant": result.stated_constant,
            "fitted_constant": result.fitted_constant.mean,
            "fitted_constant_se": result.fitted_constant.standard_error,
        }
        return self.report(
            config,
            result.lhs,
            result.rhs,
            terms={"chord_integral": result.chord_integral},
            extras=extras,
        )
