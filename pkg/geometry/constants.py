"""
Ball and sphere constants.

kappa_k is the volume of the unit k-ball and omega_k = k * kappa_k the surface
area of the unit (k-1)-sphere (omega_1 = 2, the two points of S^0).
"""

import math
from functools import lru_cache

from scipy.special import gamma


@lru_cache(maxsize=None)
def unit_ball_volume(k: int) -> float:
    """kappa_k = pi^(k/2) / Gamma(k/2 + 1); kappa_0 = 1."""
    if k < 0:
        raise ValueError(f"Dimension must be nonnegative, got {k}")
    return float(math.pi ** (k / 2.0) / gamma(k / 2.0 + 1.0))


@lru_cache(maxsize=None)
def unit_sphere_area(k: int) -> float:
    """omega_k = k * kappa_k, the area of the unit sphere in R^k."""
    if k < 1:
        raise ValueError(f"Dimension must be positive, got {k}")
    return k * unit_ball_volume(k)


@lru_cache(maxsize=None)
def blaschke_petkantschin_constant(d: int, l: int) -> float:
    """b_{d,l} = (omega_{d-l+1} ... omega_d) / (omega_1 ... omega_l)."""
    if not 1 <= l <= d:
        raise ValueError(f"Need 1 <= l <= d, got d={d}, l={l}")
    numerator = math.prod(unit_sphere_area(j) for j in range(d - l + 1, d + 1))
    denominator = math.prod(unit_sphere_area(j) for j in range(1, l + 1))
    return numerator / denominator
