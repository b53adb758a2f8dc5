"""kulens: exact calculator for 2-local lens-space ku-homology presentations.

Builds the graded relation matrices of the tensor-square module M_e,
echelonizes them over Z/2**K by minimal-valuation pivoting, and answers the
associated questions: the annihilator staircase of the bottom class, element
orders, nonvanishing of (x - y)**N classes, certificate-homomorphism
congruences, and topological-complexity lower bounds.
"""

from .localhnf import (
    Echelon,
    IncompleteEchelonError,
    PrecisionExhaustedError,
    coker_order_log2,
    echelonize,
    element_order_log2,
    is_zero_in_coker,
    lattices_equal,
    reduce_vector,
)
from .phicheck import (
    PhiTable,
    check_binom_difference_valuation,
    phi_table,
    verify_nondegeneracy,
    verify_phi,
)
from .polytoeplitz import (
    ExactDivisionError,
    Poly,
    ToeplitzBlock,
    check_doubling_identity,
    check_odd_index_identity,
    div_exact,
    p_poly,
    subst,
    toeplitz_block,
)
from .presentation import (
    GeneratorIndex,
    GradedPresentation,
    PolyMatrix,
    build_grading,
    diagonal_valuations,
    expand_poly_matrix,
    expand_relation_poly_rows,
    reduced_matrix_e4,
    relation_poly_rows,
    top_grading,
)
from .queries import (
    AnnihilatorProfile,
    HypothesisViolationError,
    XYClass,
    annihilator_profile,
    check_Ie,
    expected_staircase,
    grading_echelon,
    group_order_check,
    xy_class,
    xy_nonzero,
)
from .tcbound import BoundReport, b_lower, bound_table, table_csv, table_json, tc_lower
from .twolocal import (
    NonUnitError,
    TwoLocalScalar,
    alpha,
    binom_mod,
    default_precision,
    inv_unit,
    nu,
)

__version__ = "0.1.0"
