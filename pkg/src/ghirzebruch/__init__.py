"""Equivariant classification and index computations for cyclic G-Hirzebruch surfaces."""
from .cyclotomic import CyclotomicNumber, index_contribution, eval_sum_reciprocal, numeric_oracle
from .surface import GHirzebruchSurface, fixed_point_data, invariant_signature, seifert_data
from .moves import apply_move, decide_equivalence, normal_form, orbit
from .swindex import minus_one_sphere_obstruction, section_case_table, congruence_filter
from .homology import ConicBundleData, conic_minimality

__all__ = [
    "CyclotomicNumber", "index_contribution", "eval_sum_reciprocal", "numeric_oracle",
    "GHirzebruchSurface", "fixed_point_data", "invariant_signature", "seifert_data",
    "apply_move", "decide_equivalence", "normal_form", "orbit",
    "minus_one_sphere_obstruction", "section_case_table", "congruence_filter",
    "ConicBundleData", "conic_minimality",
]
__version__ = "0.1.0"
