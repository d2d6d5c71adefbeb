#!/usr/bin/env python3
"""
Core Constants - System-wide constants for the conformal algebra engine
Reserved symbols, exit codes, class tags and default truncation bounds
"""

from enum import Enum


# ============================================================================
# SYMBOLS
# ============================================================================

class Symbols:
    """Reserved names of the polynomial grammar"""

    DERIVATION = "d"        # ∂
    LAMBDA = "l"            # unary slot
    MU = "m"                # second slot of nested brackets
    THETA = "n"             # third slot (commutator output of Der-Jacobi)
    PARAMETER = "t"         # formal deformation parameter

    @staticmethod
    def nary(n: int) -> tuple:
        """Slot names l1 … ln of an n-cochain"""
        return tuple(f"l{i}" for i in range(1, n + 1))

    @staticmethod
    def is_reserved(name: str) -> bool:
        if name in ("d", "l", "m", "t"):
            return True
        return name.startswith("l") and name[1:].isdigit()


# ============================================================================
# PARITIES
# ============================================================================

class Parity(int, Enum):
    """Z2 grading"""
    EVEN = 0
    ODD = 1

    @classmethod
    def parse(cls, text: str) -> 'Parity':
        text = text.strip().lower()
        if text in ("even", "0"):
            return cls.EVEN
        if text in ("odd", "1"):
            return cls.ODD
        raise ValueError(f"Unknown parity: {text}")

    def __add__(self, other) -> 'Parity':
        return Parity((int(self) + int(other)) % 2)

    def label(self) -> str:
        return "even" if self == Parity.EVEN else "odd"


def koszul(*pairs) -> int:
    """(-1)^(Σ p·q) for parity pairs (p, q)"""
    total = sum(int(p) * int(q) for p, q in pairs)
    return -1 if total % 2 else 1


# ============================================================================
# CLASS TAGS
# ============================================================================

class ClassTag(str, Enum):
    """Twisted Leibniz-type classes of conformal maps"""
    DER = "der"
    GDER = "gder"
    QDER = "qder"
    C = "c"
    QC = "qc"
    ZDER = "zder"

    def companions(self) -> int:
        """Number of companion maps in the combined unknown vector"""
        if self == ClassTag.GDER:
            return 2
        if self == ClassTag.QDER:
            return 1
        return 0


# ============================================================================
# EXIT CODES
# ============================================================================

class ExitCode:
    """Process exit codes of the command-line front end"""
    PASS = 0
    CHECK_FAILURE = 1
    USAGE_ERROR = 2
    PRECONDITION_FAILURE = 3


# ============================================================================
# DEFAULTS
# ============================================================================

class Defaults:
    """Fallbacks when no configuration file is present"""
    DEG_LAMBDA = 2
    DEG_PARTIAL = 2
    POWER_K = 0
    TRIALS = 50
    COEFF_RANGE = 3
    RANDOM_DEG_LAMBDA = 2
    RANDOM_DEG_PARTIAL = 2
    CONFIG_ENV = "HLCSA_CONFIG"
    CONFIG_PATH = "config/engine_config.yaml"
