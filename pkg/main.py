#!/usr/bin/env python3
"""
HLCSA Engine - Main Entry Point
===============================

Symbolic verification engine for finite free Hom-Lie conformal superalgebras.

Architecture:
- Algebra Layer: polynomials in ∂ and λ-slots, free modules, conformal maps, the λ-bracket
- Cohomology Layer: cochains, the differential, deformations and Nijenhuis operators
- Derivation Layer: twisted derivation classes, truncated solvers and structure audits
- File Layer: sectioned algebra / cochain / map files
- Command Layer: click commands producing deterministic reports

Usage:
    python main.py check tests/fixtures/ns.alg
    python main.py d2 tests/fixtures/ns.alg tests/fixtures/ns_cochains.alg --trials 50 --seed 7
    python main.py solve tests/fixtures/ns.alg --class der --k 0 --deg-l 2 --deg-d 2 --out der.maps
    python main.py --format json audit tests/fixtures/ns.alg --deg-l 1 --deg-d 1
"""

from src.cli import cli


if __name__ == "__main__":
    cli()
