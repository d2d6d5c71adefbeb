#!/usr/bin/env python3
"""
File Format Module - Reading and writing algebra, cochain and map files
"""

from .algebra_file import (
    Entry,
    Section,
    MapSpec,
    AlgebraDocument,
    split_sections,
    parse_document,
    load_document,
    format_algebra,
    format_map,
    format_basis,
)

__all__ = [
    'Entry', 'Section', 'MapSpec', 'AlgebraDocument',
    'split_sections', 'parse_document', 'load_document',
    'format_algebra', 'format_map', 'format_basis',
]
