from functionals.estimates import EstimatorOptions
from functionals.point_identities import bpf_check
from geometry.polytopes import Polytope
from utils.base_case import BaseCase
from utils.reports import CaseConfig, VerificationReport


class BlaschkePetkantschinCase(BaseCase):
    """
    Blaschke-Petkantschin formula: l+1 interior points against the integral
    over l-flats of the section integral weighted by |conv|^{d-l}.
    """

    case_name = "bpf"
    aliases = ("blaschke-petkantschin",)
    defaults = {"body": "ball", "dim": 3, "l": 1, "point_function": "distance", "point_power": 1.0}
    suites = {
        "smoke": [{}],
        "full": [
            {},
            {"l": 2, "point_function": "hull-volume"},
            {"body": "ellipsoid:2,1,1", "l": 2},
            {"body": "cube"},
        ],
    }

    def validate(self, config: CaseConfig) -> None:
        super().validate(config)
        body = self.body(config)
        l = config.l if config.l is not None else 1
        self.require(1 <= l <= body.dim - 1, f"Need 1 <= l <= d - 1, got l = {l}")
        if isinstance(body, Polytope):
            self.require(l <= 2, f"Polytope sections are supported for l <= 2, got l = {l}")

    def evaluate(self, config: CaseConfig, options: EstimatorOptions) -> VerificationReport:
        body = self.body(config)
        lhs, rhs = bpf_check(body, config.l or 1, self.point_function(config), options)
        return self.report(config, lhs, rhs)
