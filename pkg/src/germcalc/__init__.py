"""Exact combinatorial invariants of log surface germs.

Resolution dual graphs, discrepancy solving, Hirzebruch-Jung strings,
germ taxonomy, adjunction differents, restriction degree bookkeeping,
and standard-coefficient checks, all in exact rational arithmetic.
"""

from .dualgraph import (BoundaryBranch, GraphDivisor, LcClass,
                        ResolutionGraph, boundary_coefficients, cartier_index,
                        intersection_matrix, is_contractible,
                        leading_principal_minors, log_canonical_class)
from .errors import (BadParameters, GermError, GlueMismatch, NotApplicable,
                     ParseError, SingularSystem, ValidationError)
from .germs import (ClassGroup, CyclicQuotientGerm, GermClass, GermTag,
                    NonNormalGerm, Trichotomy, check_slc_glue,
                    classify_lc_germ, classify_nonnormal, different_coeff,
                    hj_contract, hj_expand, resolution_graph)
from .rational import Rat, ceil_scale, floor_scale, format_rat, parse_rat
from .residue import (CHAIN_GLUE_RESTRICTION_TWISTS, ResidueReport,
                      dihedral_image_twist, find_failure_m,
                      glued_mcartier, glued_restriction_coeff,
                      multibranch_deficit, single_branch_report)
from .stdcoeff import (CoeffCheck, bracket_bound_holds, coeff_check,
                       is_standard, plt_modification, vanishing_hypothesis)

__version__ = "0.1.0"

__all__ = [
    "BadParameters", "BoundaryBranch", "CHAIN_GLUE_RESTRICTION_TWISTS",
    "ClassGroup", "CoeffCheck", "CyclicQuotientGerm", "GermClass",
    "GermError", "GermTag", "GlueMismatch", "GraphDivisor", "LcClass",
    "NonNormalGerm", "NotApplicable", "ParseError", "Rat",
    "ResidueReport", "ResolutionGraph", "SingularSystem", "Trichotomy",
    "ValidationError", "boundary_coefficients", "bracket_bound_holds",
    "cartier_index", "ceil_scale", "check_slc_glue", "classify_lc_germ",
    "classify_nonnormal", "coeff_check", "different_coeff",
    "dihedral_image_twist", "find_failure_m", "floor_scale", "format_rat",
    "glued_mcartier", "glued_restriction_coeff", "hj_contract", "hj_expand",
    "intersection_matrix", "is_contractible", "is_standard",
    "leading_principal_minors", "log_canonical_class", "multibranch_deficit",
    "parse_rat", "plt_modification", "resolution_graph",
    "single_branch_report", "vanishing_hypothesis",
]
