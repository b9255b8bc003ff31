"""Exact and approximate (k-equivalent) state reduction of fuzzy finite automata."""
from .automaton import (
    FuzzyAutomaton,
    KEquivalence,
    behavior,
    behavior_paths,
    factor_automaton,
    k_equivalent,
    row_automaton,
    sigma_family,
    tau_family,
)
from .fuzmat import (
    FuzzyMatrix,
    FuzzyVector,
    QuasiOrderMatrix,
    extract_rows_cols,
    infimum,
    left_residual_mat,
    left_residual_vec,
    mat_eq,
    mat_leq,
    mat_mul,
    r_factorize,
    right_residual_mat,
    right_residual_vec,
    validate_quasi_order,
)
from .lattice import BOOLEAN, GODEL, LUKASIEWICZ, PRODUCT, LatticeKind, LatticeSpec
from .reduction import (
    MethodTag,
    ReductionReport,
    greatest_invariant,
    li_sequence,
    reduce,
    ri_sequence,
    wli_matrix,
    wri_matrix,
)

__version__ = "0.1.0"
