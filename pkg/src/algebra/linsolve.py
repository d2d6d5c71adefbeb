#!/usr/bin/env python3
"""
Linear Solver - Exact elimination over ℚ
Row reduction, nullspaces and span membership for the truncated solvers

Matrices are sympy DomainMatrix objects over QQ; entries cross the API as
Fractions so callers never see sympy numbers.
"""

from fractions import Fraction
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from src.core.exceptions import DimensionMismatchError


Vector = List[Fraction]


def _qq(value):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _fraction(value) -> Fraction:
    return Fraction(int(value.p), int(value.q))


class RationalMatrix:
    """rows × cols matrix over ℚ"""

    __slots__ = ("rows", "cols", "domain_matrix")

    def __init__(self, rows: int, cols: int, entries: Optional[Sequence[Sequence]] = None):
        if entries is None:
            entries = [[0] * cols for _ in range(rows)]
        elif len(entries) != rows or any(len(r) != cols for r in entries):
            raise DimensionMismatchError(f"Entries do not form a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self.domain_matrix = DomainMatrix([[_qq(v) for v in row] for row in entries], (rows, cols), QQ)

    @classmethod
    def _wrap(cls, domain_matrix: DomainMatrix) -> 'RationalMatrix':
        matrix = cls.__new__(cls)
        matrix.rows, matrix.cols = domain_matrix.shape
        matrix.domain_matrix = domain_matrix
        return matrix

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> 'RationalMatrix':
        for j, column in enumerate(columns):
            if len(column) != rows:
                raise DimensionMismatchError(f"Column {j} has length {len(column)}, expected {rows}")
        entries = [[column[i] for column in columns] for i in range(rows)]
        return cls(rows, len(columns), entries)

    @property
    def entries(self) -> List[Vector]:
        if not self.rows:
            return []
        if not self.cols:
            return [[] for _ in range(self.rows)]
        return [[_fraction(v) for v in row] for row in self.domain_matrix.to_Matrix().tolist()]

    def copy(self) -> 'RationalMatrix':
        return RationalMatrix._wrap(self.domain_matrix.copy())

    def column(self, j: int) -> Vector:
        return [row[j] for row in self.entries]

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols})"


def rref(matrix: RationalMatrix) -> Tuple[RationalMatrix, List[int]]:
    """Reduced row echelon form and pivot columns"""
    if not matrix.rows or not matrix.cols:
        return matrix.copy(), []
    reduced, pivots = matrix.domain_matrix.rref()
    return RationalMatrix._wrap(reduced), list(pivots)


def rank(matrix: RationalMatrix) -> int:
    return len(rref(matrix)[1])


def nullspace(matrix: RationalMatrix) -> List[Vector]:
    """
    Basis of {x : M x = 0}, one vector per free column

    Each basis vector has a 1 at its free column and 0 at the other free columns.
    """
    reduced, pivots = rref(matrix)
    rows = reduced.entries
    free = [c for c in range(matrix.cols) if c not in pivots]
    basis: List[Vector] = []
    for f in free:
        vector = [Fraction(0)] * matrix.cols
        vector[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vector[p] = -rows[r][f]
        basis.append(vector)
    return basis


def solve(matrix: RationalMatrix, rhs: Sequence) -> Optional[Vector]:
    """One solution of M x = rhs (free variables set to 0), or None"""
    if len(rhs) != matrix.rows:
        raise DimensionMismatchError(f"Right-hand side has length {len(rhs)}, expected {matrix.rows}")
    augmented = RationalMatrix(matrix.rows, matrix.cols + 1,
                               [list(row) + [b] for row, b in zip(matrix.entries, rhs)])
    reduced, pivots = rref(augmented)
    if matrix.cols in pivots:
        return None
    rows = reduced.entries
    solution = [Fraction(0)] * matrix.cols
    for r, p in enumerate(pivots):
        solution[p] = rows[r][matrix.cols]
    return solution


def in_span(vector: Sequence, basis: Sequence[Sequence]) -> bool:
    """Whether vector is a ℚ-combination of the basis vectors"""
    if not basis:
        return all(Fraction(v) == 0 for v in vector)
    for b in basis:
        if len(b) != len(vector):
            raise DimensionMismatchError(f"Basis vector length {len(b)} differs from {len(vector)}")
    matrix = RationalMatrix.from_columns(basis, len(vector))
    return solve(matrix, vector) is not None


def columns_to_matrix(columns: Sequence[Mapping[Hashable, Fraction]]) -> Tuple[RationalMatrix, List[Hashable]]:
    """
    Stack sparse column vectors into a matrix

    Row keys are the union of all column keys, sorted by their repr so the
    row order does not depend on dict iteration.
    """
    keys = sorted({key for column in columns for key in column}, key=repr)
    index: Dict[Hashable, int] = {key: i for i, key in enumerate(keys)}
    entries = [[Fraction(0)] * len(columns) for _ in keys]
    for j, column in enumerate(columns):
        for key, value in column.items():
            entries[index[key]][j] = Fraction(value)
    return RationalMatrix(len(keys), len(columns), entries), keys
