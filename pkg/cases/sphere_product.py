import math

import numpy as np

from functionals.estimates import EstimatorOptions
from functionals.lemmas import (
    ball_moment_quadrature,
    circle_product_quadrature,
    sphere_product_integral,
)
from utils.base_case import BaseCase, CaseError
from utils.reports import CaseConfig, VerificationReport

QUADRATURE_TOLERANCE = 1e-10


class SphereProductCase(BaseCase):
    """
    Spherical average of (u_1, z)(u_2, z) for u_1 = u_2 = e_1, checked by Monte
    Carlo against (u_1, u_2)/(d-1), with the planar circle and ball-moment
    averages checked by quadrature.
    """

    case_name = "sphere-product"
    defaults = {"dim": 3}
    suites = {
        "smoke": [{}],
        "full": [{}, {"dim": 4}, {"dim": 6}],
    }

    def validate(self, config: CaseConfig) -> None:
        super().validate(config)
        self.require(
            config.dim is not None and config.dim >= 3,
            f"{self.case_name} needs d >= 3, got {config.dim}",
        )

    def evaluate(self, config: CaseConfig, options: EstimatorOptions) -> VerificationReport:
        dim = config.dim or 3
        u = np.eye(dim - 1)[0]
        lhs, rhs = sphere_product_integral(u, u, dim, options)

        phi_0 = math.pi / 3.0
        circle_residual = abs(circle_product_quadrature(phi_0) - math.cos(phi_0) / 2.0)
        ball_residual = abs(ball_moment_quadrature(dim) - 2.0 / dim)
        if max(circle_residual, ball_residual) > QUADRATURE_TOLERANCE:
            raise CaseError(
                f"Quadrature residuals {circle_residual:.2e}, {ball_residual:.2e} "
                f"exceed {QUADRATURE_TOLERANCE:.0e}"
            )
        extras = {"circle_residual": circle_residual, "ball_moment_residual": ball_residual}
        return self.report(config, lhs, rhs, extras=extras)
