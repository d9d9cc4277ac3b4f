from functionals.estimates import EstimatorOptions
from functionals.polytope_identities import polytope_zahle_check
from utils.base_case import BaseCase
from utils.reports import CaseConfig, VerificationReport


class PolytopeZahleCase(BaseCase):
    """
    Two-point surface integral of a polytope, split into pairs on distinct
    facets and pairs on a common facet.
    """

    case_name = "thm4"
    aliases = ("polytope-zahle",)
    defaults = {
        "body": "cube",
        "dim": 3,
        "l": 1,
        "point_function": "distance",
        "point_power": 3.0,
    }
    suites = {
        "smoke": [{}],
        "full": [{}, {"body": "regular-simplex"}, {"point_power": 2.0}],
    }

    def validate(self, config: CaseConfig) -> None:
        super().validate(config)
        polytope = self.polytope(config)
        self.require(polytope.dim >= 3, f"{self.case_name} needs d >= 3, got {polytope.dim}")
        self.require(config.l in (None, 1), "Only point pairs (l = 1) are supported")

    def evaluate(self, config: CaseConfig, options: EstimatorOptions) -> VerificationReport:
        polytope = self.polytope(config)
        terms = polytope_zahle_check(polytope, self.point_function(config), options)
        breakdown = {"mixed": terms.first_term, "same_facet": terms.second_term}
        for i, facet_term in enumerate(terms.facet_terms):
            breakdown[f"facet_{i}"] = facet_term
        return self.report(config, terms.lhs, terms.rhs, terms=breakdown)
