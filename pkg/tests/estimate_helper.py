"""
Helpers for statistical assertions in tests.
"""

from functionals.estimates import EstimatorOptions, MCEstimate, z_score
from measures.rng import RngStream


def make_options(n_samples: int = 20_000, seed: int = 3, shards: int = 1) -> EstimatorOptions:
    """Small, single-threaded sampling options."""
    return EstimatorOptions(
        n_samples=n_samples,
        stream=RngStream(seed=seed),
        shards=shards,
        batch_size=8192,
        max_workers=1,
    )


def assert_within_sigma(estimate: MCEstimate, expected: float, sigmas: float = 4.0) -> None:
    """Assert an estimate agrees with an exact value within `sigmas` standard errors."""
    tolerance = sigmas * estimate.standard_error + 1e-12 * max(1.0, abs(expected))
    assert abs(estimate.mean - expected) <= tolerance, (
        f"{estimate.mean} ± {estimate.standard_error} is not within {sigmas}σ of {expected}"
    )


def assert_sides_agree(lhs: MCEstimate, rhs: MCEstimate, threshold: float = 4.0) -> None:
    z = z_score(lhs, rhs)
    assert abs(z) <= threshold, (
        f"lhs={lhs.mean} ± {lhs.standard_error}, rhs={rhs.mean} ± {rhs.standard_error}, z={z:.2f}"
    )
