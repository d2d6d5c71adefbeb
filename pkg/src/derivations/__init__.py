"""
Derivations Module - Derivation-type classes of conformal maps, their solvers and structure audits
"""

from .classes import (
    DerivationCandidate,
    class_check,
    inner_derivation,
    der_commutator,
    der_hom_jacobi_check,
    derivation_extension,
    extension_check,
    candidate_from_map,
)
from .solver import SolutionBasis, solve_class, find_companion, map_vectors, in_map_span, parameter_parts
from .audit import (
    inclusion_audit,
    gder_decompose,
    center_interaction_check,
    qc_commutator_report,
    audit_all,
    membership,
)

__all__ = [
    'DerivationCandidate', 'class_check', 'inner_derivation', 'der_commutator',
    'der_hom_jacobi_check', 'derivation_extension', 'extension_check', 'candidate_from_map',
    'SolutionBasis', 'solve_class', 'find_companion', 'map_vectors', 'in_map_span', 'parameter_parts',
    'inclusion_audit', 'gder_decompose', 'center_interaction_check', 'qc_commutator_report',
    'audit_all', 'membership',
]
