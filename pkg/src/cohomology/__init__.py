"""
Cohomology Module - Cochains, differentials, deformations and Nijenhuis operators
"""

from .cochain import (
    Cochain,
    cochain_validate,
    differential,
    differential_s,
    default_shift_target,
    random_cochain,
    cochain_from_bracket,
    bracket_cochain,
    zero_cochain,
)
from .deformation import (
    DeformationFamily,
    NijenhuisResult,
    deformation_table,
    build_family,
    deform,
    cocycle2_check,
    nijenhuis_bracket_table,
    nijenhuis_check,
    deformation_operator,
    triviality_certificate,
    nijenhuis_deformation,
)

__all__ = [
    'Cochain', 'cochain_validate', 'differential', 'differential_s', 'default_shift_target',
    'random_cochain', 'cochain_from_bracket', 'bracket_cochain', 'zero_cochain',
    'DeformationFamily', 'NijenhuisResult', 'deformation_table', 'build_family', 'deform',
    'cocycle2_check', 'nijenhuis_bracket_table', 'nijenhuis_check', 'deformation_operator',
    'triviality_certificate', 'nijenhuis_deformation',
]
