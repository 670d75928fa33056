"""Exact invariants and Hilbert-scheme checks for ropes supported on a line."""

from .bivar import HomPoly, hp_eval, hp_gcd, hp_mul
from .complexes import (
    ComplexRep,
    i2_resolution,
    is_minimal,
    minimal_i2_resolution,
    rope_resolution,
    struct_sheaf_resolution,
    verify_complex,
    verify_exactness_certificate,
)
from .families import (
    Classification,
    TypeVector,
    classify,
    component_dim,
    dim_V_alpha,
    dim_W_beta,
    gin_ideal,
    is_obstructed,
    minimal_types,
    rho_min_dominates,
    thm613_matrix,
)
from .fields import Field, make_field, scalar_inv
from .graded import (
    GradedFreeModule,
    GradedMap,
    coker_hilbert,
    degree_piece,
    kernel_generators,
    maximal_minors,
    minors_codim2,
)
from .multipoly import MultiPoly
from .normal import (
    NormalSections,
    NormalSystem,
    assemble_system,
    check_condition_58,
    check_pij,
    double_line_formula,
    double_line_solution_oracle,
    expected_h0_if_58,
    h0_normal,
    normal_lower_bound,
)
from .rope import (
    BettiTable,
    Rope,
    betti_table,
    h0_structure,
    hilbert_function,
    ideal_generators,
    random_double_line,
    random_rope,
    rao_function,
    rao_via_cokerA,
    regularity,
    rope_from_A,
    rope_from_B,
    rope_from_json,
    rope_to_json,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
