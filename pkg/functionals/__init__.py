"""
Estimators for both sides of every identity, and the auxiliary checks.
"""

from functionals.chord_functionals import (
    ambartzumian_correction,
    chord_functional_lhs,
    chord_integral,
    cot_product_integral,
    isoperimetric_defect,
    mean_chord_check,
    normalization_check,
    pleijel_cot_rhs,
    pleijel_pair_integral,
    pleijel_prefactor,
    pleijel_rhs,
    pleijel_rhs_2d,
    zahle_two_point_check,
)
from functionals.estimates import EstimatorOptions, MCEstimate, RunningMoments, z_score
from functionals.histograms import ChordHistogram, ball_chord_density, chord_length_histogram
from functionals.integrands import PointFunction, TestFunction
from functionals.lemmas import (
    CotLemmaResult,
    ball_moment_quadrature,
    circle_product_quadrature,
    cot_lemma_check,
    cot_lemma_max_residual,
    flag_fubini_check,
    random_cot_lemma_checks,
    sphere_product_integral,
)
from functionals.point_identities import (
    CorollaryResult,
    bpf_check,
    corollary_check,
    interior_pair_moment,
    kingman_check,
    mixed_point_check,
)
from functionals.polytope_identities import (
    PolytopeTerms,
    polytope_pleijel_check,
    polytope_zahle_check,
)

__all__ = [
    "ChordHistogram",
    "CorollaryResult",
    "CotLemmaResult",
    "EstimatorOptions",
    "MCEstimate",
    "PointFunction",
    "PolytopeTerms",
    "RunningMoments",
    "TestFunction",
    "ambartzumian_correction",
    "ball_chord_density",
    "ball_moment_quadrature",
    "bpf_check",
    "chord_functional_lhs",
    "chord_integral",
    "chord_length_histogram",
    "circle_product_quadrature",
    "corollary_check",
    "cot_lemma_check",
    "cot_lemma_max_residual",
    "cot_product_integral",
    "flag_fubini_check",
    "interior_pair_moment",
    "isoperimetric_defect",
    "kingman_check",
    "mean_chord_check",
    "mixed_point_check",
    "normalization_check",
    "pleijel_cot_rhs",
    "pleijel_pair_integral",
    "pleijel_prefactor",
    "pleijel_rhs",
    "pleijel_rhs_2d",
    "polytope_pleijel_check",
    "polytope_zahle_check",
    "random_cot_lemma_checks",
    "sphere_product_integral",
    "z_score",
]
