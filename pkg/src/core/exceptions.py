#!/usr/bin/env python3
"""
Custom Exceptions - Exception hierarchy for the conformal algebra engine
Provides specific exception types for better error handling
"""

from typing import Optional


class ConformalEngineException(Exception):
    """Base exception for all engine errors"""
    pass


# ============================================================================
# INPUT LAYER EXCEPTIONS
# ============================================================================

class InputException(ConformalEngineException):
    """Base exception for input layer errors"""
    pass


class PolynomialSyntaxError(InputException):
    """Polynomial string does not follow the grammar"""
    def __init__(self, message: str, text: str, position: int, line: Optional[int] = None):
        self.message = message
        self.text = text
        self.position = position
        self.line = line
        where = f"line {line}, column {position + 1}" if line is not None else f"position {position}"
        super().__init__(f"{message} at {where}: {text!r}")


class UnknownSlotError(InputException):
    """Symbol is not a declared λ-slot of the context"""
    def __init__(self, slot: str, context=None):
        self.slot = slot
        self.context = context
        super().__init__(f"Unknown slot {slot!r}" + (f" in context {tuple(context)}" if context is not None else ""))


class UnknownGeneratorError(InputException):
    """Generator name is not declared in the module"""
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Unknown generator: {name}")


class AlgebraFileError(InputException):
    """Algebra / cochain / map file is malformed"""
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


# ============================================================================
# ALGEBRA LAYER EXCEPTIONS
# ============================================================================

class AlgebraException(ConformalEngineException):
    """Base exception for algebraic precondition failures"""
    pass


class ContextMismatchError(AlgebraException):
    """Polynomials live in different λ-slot contexts"""
    def __init__(self, left, right):
        self.left = left
        self.right = right
        super().__init__(f"Context mismatch: {tuple(left)} vs {tuple(right)}")


class ModuleMismatchError(AlgebraException):
    """Element or map belongs to another module"""
    pass


class SlotCollisionError(AlgebraException):
    """Output slot is already used by an argument"""
    def __init__(self, slot: str):
        self.slot = slot
        super().__init__(f"Slot {slot!r} already occurs in an argument")


class ParityError(AlgebraException):
    """Element or map is not parity-homogeneous where a parity is required"""
    pass


class NotInvertibleError(AlgebraException):
    """Module map has no inverse over Q[∂]"""
    def __init__(self, message: str = "Determinant is not a nonzero constant"):
        super().__init__(message)


class NotRegularError(AlgebraException):
    """Twisting map is not an automorphism"""
    pass


class NotAlphaFixedError(AlgebraException):
    """Element is not fixed by the twisting map"""
    def __init__(self, element: str):
        self.element = element
        super().__init__(f"α(a) ≠ a for a = {element}")


class AlphaCommutationFailure(AlgebraException):
    """Operator does not commute with the twisting map"""
    pass


class ClassCheckFailure(AlgebraException):
    """A map required to satisfy a class identity does not"""
    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


# ============================================================================
# SOLVER EXCEPTIONS
# ============================================================================

class SolverException(ConformalEngineException):
    """Base exception for linear solver errors"""
    pass


class MissingCompanionsError(SolverException):
    """Generalized derivation check needs D′ and D″"""
    pass


class BoundMismatchError(SolverException):
    """Solution bases were computed with different truncation windows"""
    def __init__(self, expected, found, tag: str = ""):
        self.expected = expected
        self.found = found
        super().__init__(f"Bound mismatch{' for ' + tag if tag else ''}: expected {expected}, found {found}")


class DimensionMismatchError(SolverException):
    """Vector and basis lengths differ"""
    pass


# ============================================================================
# CONFIGURATION EXCEPTIONS
# ============================================================================

class ConfigurationException(ConformalEngineException):
    """Base exception for configuration errors"""
    pass


class InvalidConfigException(ConfigurationException):
    """Configuration value is invalid"""
    pass
