#!/usr/bin/env python3
"""
Core Module - Foundational components for the conformal algebra engine
Exports constants, models, exceptions, configuration and utilities
"""

from .constants import (
    Symbols,
    Parity,
    ClassTag,
    ExitCode,
    Defaults,
    koszul,
)

from .models import (
    CheckStatus,
    Residual,
    CheckReport,
    CheckEntry,
    RunReport,
)

from .exceptions import (
    ConformalEngineException,
    InputException,
    PolynomialSyntaxError,
    UnknownSlotError,
    UnknownGeneratorError,
    AlgebraFileError,
    AlgebraException,
    ContextMismatchError,
    ModuleMismatchError,
    SlotCollisionError,
    ParityError,
    NotInvertibleError,
    NotRegularError,
    NotAlphaFixedError,
    AlphaCommutationFailure,
    ClassCheckFailure,
    SolverException,
    MissingCompanionsError,
    BoundMismatchError,
    DimensionMismatchError,
    ConfigurationException,
    InvalidConfigException,
)

from .config import (
    EngineConfig,
    SolverConfig,
    RandomConfig,
    ReportConfig,
    LoggingConfig,
    load_config,
)

from .utils import (
    file_digest,
    format_duration,
    format_bounds,
    Timer,
)

__version__ = "1.0.0"
__all__ = [
    # Constants
    'Symbols', 'Parity', 'ClassTag', 'ExitCode', 'Defaults', 'koszul',

    # Models
    'CheckStatus', 'Residual', 'CheckReport', 'CheckEntry', 'RunReport',

    # Exceptions
    'ConformalEngineException', 'InputException', 'PolynomialSyntaxError',
    'UnknownSlotError', 'UnknownGeneratorError', 'AlgebraFileError',
    'AlgebraException', 'ContextMismatchError', 'ModuleMismatchError',
    'SlotCollisionError', 'ParityError', 'NotInvertibleError', 'NotRegularError',
    'NotAlphaFixedError', 'AlphaCommutationFailure', 'ClassCheckFailure', 'SolverException',
    'MissingCompanionsError', 'BoundMismatchError', 'DimensionMismatchError',
    'ConfigurationException', 'InvalidConfigException',

    # Configuration
    'EngineConfig', 'SolverConfig', 'RandomConfig', 'ReportConfig', 'LoggingConfig',
    'load_config',

    # Utilities
    'file_digest', 'format_duration', 'format_bounds', 'Timer',
]
