from functionals.estimates import EstimatorOptions, MCEstimate
from functionals.lemmas import random_cot_lemma_checks
from utils.base_case import BaseCase, CaseError
from utils.reports import CaseConfig, VerificationReport

# Configurations checked per run, and the largest residual that still passes
MAX_CONFIGURATIONS = 100
RESIDUAL_TOLERANCE = 1e-8


class CotLemmaCase(BaseCase):
    """
    Deterministic check that the cotangent of the section's tangent angle
    equals <n, u_E> / |<n, u>| at both chord endpoints, on random chords and
    random planes through them.
    """

    case_name = "cot-lemma"
    defaults = {"body": "ellipsoid:2,1,1", "dim": 3}
    suites = {
        "smoke": [{}],
        "full": [{}, {"body": "ball"}, {"body": "ellipsoid:3,2,1,1", "dim": 4}],
    }

    def validate(self, config: CaseConfig) -> None:
        super().validate(config)
        body = self.smooth_body(config)
        self.require(body.dim >= 3, f"{self.case_name} needs d >= 3, got {body.dim}")

    def evaluate(self, config: CaseConfig, options: EstimatorOptions) -> VerificationReport:
        body = self.smooth_body(config)
        count = min(config.n_samples, MAX_CONFIGURATIONS)
        results = random_cot_lemma_checks(body, options.stream.generator(), count)
        if not results:
            raise CaseError("No usable cotangent configuration")
        residual = max(result.residual for result in results)
        return self.report(
            config,
            MCEstimate.exact(residual),
            MCEstimate.exact(0.0),
            extras={"configurations": float(len(results))},
            exact_tolerance=RESIDUAL_TOLERANCE,
        )
