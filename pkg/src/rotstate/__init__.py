"""Rotationally invariant bipartite states: exact Wigner symbols, the
partial time reversal on parameter space, separability criteria and the
polytopes of states, PPT states and separable states."""

from .errors import DomainError, UnsupportedError
from .exact import SignedSqrtRational, Surd
from .geometry import (
    Halfspace,
    Polytope,
    fixed_point_set,
    image_under_theta,
    intersect,
    ppt_polytope,
    separable_polytope,
    simplex_S,
)
from .invariant import (
    AlphaVector,
    ThetaMatrix,
    apply_theta,
    max_entropy_alpha,
    singlet_alpha,
    theta_eigenvectors,
    theta_matrix,
    werner_alpha,
)
from .separability import (
    Classification,
    CriteriaReport,
    classify,
    criteria_report,
    cross_norm,
    is_ppt,
    negativity_trace_norm,
    phi_map_check,
    reduction_criterion,
    witness_expectation,
)
from .wigner import HalfInt, clebsch_gordan, six_j, six_j_via_3j_sum, three_j, triangle_ok

__version__ = "0.1.0"

__all__ = [
    "AlphaVector",
    "Classification",
    "CriteriaReport",
    "DomainError",
    "HalfInt",
    "Halfspace",
    "Polytope",
    "SignedSqrtRational",
    "Surd",
    "ThetaMatrix",
    "UnsupportedError",
    "apply_theta",
    "classify",
    "clebsch_gordan",
    "criteria_report",
    "cross_norm",
    "fixed_point_set",
    "image_under_theta",
    "intersect",
    "is_ppt",
    "max_entropy_alpha",
    "negativity_trace_norm",
    "phi_map_check",
    "ppt_polytope",
    "reduction_criterion",
    "separable_polytope",
    "simplex_S",
    "singlet_alpha",
    "six_j",
    "six_j_via_3j_sum",
    "theta_eigenvectors",
    "theta_matrix",
    "three_j",
    "triangle_ok",
    "werner_alpha",
    "witness_expectation",
]
