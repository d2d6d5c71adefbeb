"""
Algebra Module - Polynomials, free modules, exact linear algebra,
conformal superalgebras and their representations
"""

from .polyring import (
    Poly,
    LambdaContext,
    make_context,
    merge_contexts,
    fresh_slot,
    poly_parse,
    poly_print,
    random_poly,
)
from .freemod import (
    GradedModule,
    Element,
    ModuleMap,
    element_parse,
    map_apply,
    map_power,
    map_compose,
    regularity_check,
    identity_map,
    zero_map,
)
from .linsolve import RationalMatrix, rref, rank, nullspace, solve, in_span, columns_to_matrix
from .lcsa import (
    ConformalAlgebra,
    bracket_eval,
    skew_transform,
    hom_jacobi_residual,
    check_grading,
    check_skew,
    check_hom_jacobi,
    check_multiplicative,
    check_regularity,
    check_hom_associativity,
    check_all,
    cur_algebra,
    from_hom_associative,
    center_solve,
)
from .rep import (
    ConformalMap,
    Representation,
    chom_compose,
    chom_commutator,
    gc_bracket,
    adjoint,
    rep_shift,
    rep_check,
    dual_rep_condition_check,
    semidirect,
)

__all__ = [
    # Polynomials
    'Poly', 'LambdaContext', 'make_context', 'merge_contexts', 'fresh_slot',
    'poly_parse', 'poly_print', 'random_poly',

    # Free modules
    'GradedModule', 'Element', 'ModuleMap', 'element_parse', 'map_apply', 'map_power',
    'map_compose', 'regularity_check', 'identity_map', 'zero_map',

    # Linear algebra
    'RationalMatrix', 'rref', 'rank', 'nullspace', 'solve', 'in_span', 'columns_to_matrix',

    # Conformal algebras
    'ConformalAlgebra', 'bracket_eval', 'skew_transform', 'hom_jacobi_residual',
    'check_grading', 'check_skew', 'check_hom_jacobi', 'check_multiplicative',
    'check_regularity', 'check_hom_associativity', 'check_all', 'cur_algebra',
    'from_hom_associative', 'center_solve',

    # Representations
    'ConformalMap', 'Representation', 'chom_compose', 'chom_commutator', 'gc_bracket',
    'adjoint', 'rep_shift', 'rep_check', 'dual_rep_condition_check', 'semidirect',
]
