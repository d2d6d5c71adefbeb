#!/usr/bin/env python3
"""
Class Solver - Truncated linear solving for derivation-type classes
Unknown matrix entries on monomials µ^p ∂^q, coefficient matching and exact nullspaces
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from loguru import logger

from src.algebra.freemod import Element
from src.algebra.lcsa import ConformalAlgebra
from src.algebra.linsolve import RationalMatrix, columns_to_matrix, in_span, nullspace, solve
from src.algebra.polyring import Poly, merge_contexts
from src.algebra.rep import ConformalMap
from src.core.constants import ClassTag, Parity, Symbols
from src.core.exceptions import SolverException
from .classes import (
    IDENTITIES,
    DerivationCandidate,
    Frame,
    alpha_commutator,
    class_check,
    identity_pieces,
    make_frame,
)


L = Symbols.LAMBDA
D = Symbols.DERIVATION

Bounds = Tuple[int, int]
UnknownKey = Tuple[str, str, Tuple[int, ...]]


# ============================================================================
# DATA MODELS
# ============================================================================

@dataclass
class SolutionBasis:
    """Basis of a class within degree bounds (maxdeg λ, maxdeg ∂)"""
    tag: ClassTag
    k: int
    bounds: Bounds
    basis: List[ConformalMap] = field(default_factory=list)
    companions: List[Tuple[ConformalMap, ...]] = field(default_factory=list)
    note: str = "complete within bounds only"

    def __len__(self) -> int:
        return len(self.basis)

    def candidates(self) -> List[DerivationCandidate]:
        items = []
        for i, rmap in enumerate(self.basis):
            companions = self.companions[i] if i < len(self.companions) else ()
            items.append(DerivationCandidate(rmap, self.k, self.tag, companions,
                                             name=f"{self.tag.value}[{i}]"))
        return items


# ============================================================================
# UNKNOWNS
# ============================================================================

def _monomials(slot: str, bounds: Bounds, extra: Mapping[str, int]) -> List[Tuple[Tuple[str, int], ...]]:
    names = [slot, D] + list(extra)
    limits = [bounds[0], bounds[1]] + [extra[n] for n in extra]
    return [tuple(zip(names, exps)) for exps in product(*(range(b + 1) for b in limits))]


def unknown_maps(A: ConformalAlgebra, parity: Parity, bounds: Bounds, slot: str,
                 context: Sequence[str], extra: Optional[Mapping[str, int]] = None
                 ) -> List[Tuple[UnknownKey, ConformalMap]]:
    """
    One elementary map per matrix entry and monomial of the parity block

    The entry (row, col) is allowed when |row| = |col| + parity.
    """
    extra = dict(extra or {})
    context = merge_contexts(context, (slot,))
    unknowns = []
    for col, row in product(A.names, repeat=2):
        if A.parity(row) != A.parity(col) + parity:
            continue
        for monomial in _monomials(slot, bounds, extra):
            poly = Poly.one(context)
            for name, exp in monomial:
                if exp:
                    base = Poly.partial(context) if name == D else Poly.variable(name, context)
                    poly = poly * base ** exp
            image = Element(A.module, context, {row: poly})
            key = (col, row, tuple(exp for _, exp in monomial))
            unknowns.append((key, ConformalMap(A.module, A.module, {col: image}, parity, slot, context)))
    return unknowns


def assemble_map(A: ConformalAlgebra, unknowns: Sequence[Tuple[UnknownKey, ConformalMap]],
                 coefficients: Sequence[Fraction], parity: Parity, slot: str,
                 context: Sequence[str]) -> ConformalMap:
    """Σ c_i E_i over the elementary maps"""
    result = ConformalMap.zero(A.module, A.module, parity, slot, merge_contexts(context, (slot,)))
    for (_, E), value in zip(unknowns, coefficients):
        if value:
            result = result + E.scale(value)
    return result


def _role_columns(A: ConformalAlgebra, tag: ClassTag, k: int, role: int,
                  unknowns: Sequence[Tuple[UnknownKey, ConformalMap]], frame: Frame,
                  cache: Dict[int, Dict[Tuple[str, str], Dict[str, Element]]]) -> List[Dict[Hashable, Fraction]]:
    """Coefficient columns of one role's unknowns in the class equations"""
    twist = A.alpha_power(k)
    names = frame.context + (D,)
    zero = Element.zero(A.module, frame.context)
    columns = []
    for index, (_, E) in enumerate(unknowns):
        if index not in cache:
            cache[index] = {(a, b): identity_pieces(A, E, twist, a, b, frame)
                            for a, b in product(A.names, repeat=2)}
        column: Dict[Hashable, Fraction] = {}
        for (a, b), pieces in cache[index].items():
            for label, terms in IDENTITIES[tag]:
                total = zero
                for r, piece, coeff in terms:
                    if r == role:
                        total = total + pieces[piece].scale(coeff)
                column.update(total.flatten(names, ("id", label, a, b)))
        column.update(alpha_commutator(A, E).flatten(names, ("alpha", role)))
        columns.append(column)
    return columns


# ============================================================================
# SOLVER
# ============================================================================

def solve_class(A: ConformalAlgebra, tag: ClassTag, k: int = 0, bounds: Bounds = (2, 2)) -> SolutionBasis:
    """
    Basis of the class within degree bounds

    Unknown entries of D (and of the companions for GDer/QDer) are expanded on
    monomials µ^p ∂^q with p ≤ bounds[0], q ≤ bounds[1]. Coefficient matching
    over all generator pairs gives a linear system whose nullspace, projected
    to D, spans the class within the bounds. Every basis element is re-checked
    exactly with its companions.

    Raises:
        ValueError: negative bounds
        SolverException: a basis element fails its own class check
    """
    if min(bounds) < 0:
        raise ValueError(f"Bounds must be non-negative, got {bounds}")
    roles = 1 + tag.companions()
    frame = make_frame(A, [])
    map_context = merge_contexts(A.params, (frame.mu,))
    result = SolutionBasis(tag, k, tuple(bounds))

    for parity in (Parity.EVEN, Parity.ODD):
        unknowns = unknown_maps(A, parity, bounds, frame.mu, map_context)
        if not unknowns:
            continue
        cache: Dict[int, Dict[Tuple[str, str], Dict[str, Element]]] = {}
        columns = []
        for role in range(roles):
            columns.extend(_role_columns(A, tag, k, role, unknowns, frame, cache))
        matrix, _ = columns_to_matrix(columns)
        logger.debug(f"{tag.value} k={k} {parity.label()} block: {matrix.rows}x{matrix.cols} system")

        n = len(unknowns)
        projections: List[List[Fraction]] = []
        for vector in nullspace(matrix):
            projection = vector[:n]
            if not any(projection):
                continue
            if projections and in_span(projection, projections):
                continue
            projections.append(projection)
            maps = [assemble_map(A, unknowns, vector[r * n:(r + 1) * n], parity, frame.mu, map_context)
                    for r in range(roles)]
            result.basis.append(maps[0].rename_slot(L))
            result.companions.append(tuple(m.rename_slot(L) for m in maps[1:]))

    for cand in result.candidates():
        report = class_check(A, cand)
        if not report.passed:
            raise SolverException(f"Basis element {cand.name} fails its {tag.value} check")
    logger.info(f"{tag.value}_k={k} within bounds {tuple(bounds)}: dimension {len(result)}")
    return result


def find_companion(A: ConformalAlgebra, rmap: ConformalMap, tag: ClassTag, k: int,
                   bounds: Bounds) -> Optional[Tuple[ConformalMap, ...]]:
    """
    Companions within bounds making rmap a member of a GDer/QDer class, or None

    Parameter slots of rmap (such as the λ of a commutator) are allowed in the
    companions up to the degree they reach in rmap.
    """
    roles = 1 + tag.companions()
    if roles == 1:
        return ()
    frame = make_frame(A, [rmap])
    X = rmap.rename_slot(frame.mu)
    extra = {p: X.max_degree(p) for p in X.params if p not in A.params and X.max_degree(p) > 0}
    map_context = merge_contexts(A.params, X.params, (frame.mu,))
    unknowns = unknown_maps(A, X.parity, bounds, frame.mu, map_context, extra)

    cache: Dict[int, Dict[Tuple[str, str], Dict[str, Element]]] = {}
    columns = []
    for role in range(1, roles):
        columns.extend(_role_columns(A, tag, k, role, unknowns, frame, cache))
    known = _role_columns(A, tag, k, 0, [(None, X)], frame, {})[0]
    known = {key: value for key, value in known.items() if key[0] == "id"}
    augmented, _ = columns_to_matrix(columns + [known])
    rhs = [-row[-1] for row in augmented.entries]
    matrix = RationalMatrix(augmented.rows, augmented.cols - 1, [row[:-1] for row in augmented.entries])
    solution = solve(matrix, rhs)
    if solution is None:
        return None
    n = len(unknowns)
    return tuple(assemble_map(A, unknowns, solution[r * n:(r + 1) * n], X.parity, frame.mu, map_context)
                 .rename_slot(rmap.slot) for r in range(roles - 1))


# ============================================================================
# SPAN MEMBERSHIP
# ============================================================================

def map_vectors(maps: Sequence[ConformalMap]) -> List[List[Fraction]]:
    """
    Aligned coefficient vectors of λ-slot maps

    Keys use slot and ∂ exponents only, so maps acting in differently named
    slots compare; parameter slots must not occur.
    """
    columns = [m.flatten((m.slot, D)) for m in maps]
    matrix, _ = columns_to_matrix(columns)
    return [matrix.column(j) for j in range(matrix.cols)]


def in_map_span(target: ConformalMap, basis: Sequence[ConformalMap]) -> bool:
    vectors = map_vectors([target, *basis])
    return in_span(vectors[0], vectors[1:])


def parameter_parts(rmap: ConformalMap, params: Sequence[str]) -> List[ConformalMap]:
    """Coefficients of every monomial in the given parameter slots"""
    parts = [rmap]
    for name in params:
        parts = [piece for part in parts for piece in part.split_by(name).values()]
    return parts
