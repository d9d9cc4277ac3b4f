from functionals.estimates import EstimatorOptions
from functionals.polytope_identities import polytope_pleijel_check
from utils.base_case import BaseCase
from utils.reports import CaseConfig, VerificationReport


class PolytopePleijelCase(BaseCase):
    """
    Pleijel identity for convex polytopes: the cotangent pair term plus one
    chord functional per facet.
    """

    case_name = "thm2"
    aliases = ("polytope-pleijel",)
    defaults = {"body": "cube", "dim": 3, "h_power": 3}
    suites = {
        "smoke": [{}],
        "full": [{}, {"body": "regular-simplex"}, {"body": "octahedron"}],
    }

    def validate(self, config: CaseConfig) -> None:
        super().validate(config)
        self.polytope(config)

    def evaluate(self, config: CaseConfig, options: EstimatorOptions) -> VerificationReport:
        polytope = self.polytope(config)
        terms = polytope_pleijel_check(polytope, self.test_function(config), options)
        breakdown = {"cot": terms.first_term, "facets": terms.second_term}
        for i, facet_term in enumerate(terms.facet_terms):
            breakdown[f"facet_{i}"] = facet_term
        return self.report(config, terms.lhs, terms.rhs, terms=breakdown)
