"""Distinct-square analysis toolkit.

Words, distinct-square sequences, double-square positions and factorization,
extremal word-family constructions, and checkers for the associated
closed-form predictions.
"""

from .engine import (
    DensityReport,
    DistinctSquareRecord,
    DoubleSquare,
    FsFactorization,
    SquareOccurrence,
    SquareSequence,
    density,
    distinct_square_sequence,
    enumerate_distinct_squares,
    expand_fs,
    fs_factorize,
    fs_positions,
)
from .errors import BudgetExceeded, DomainError, InternalInvariantError, SqscopeError, ParseError
from .words import FactorRef, Word, can_cyclic_shift_right, is_primitive, primitive_root

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "DensityReport",
    "DistinctSquareRecord",
    "DomainError",
    "DoubleSquare",
    "FactorRef",
    "FsFactorization",
    "InternalInvariantError",
    "ParseError",
    "SqscopeError",
    "SquareOccurrence",
    "SquareSequence",
    "Word",
    "can_cyclic_shift_right",
    "density",
    "distinct_square_sequence",
    "enumerate_distinct_squares",
    "expand_fs",
    "fs_factorize",
    "fs_positions",
    "is_primitive",
    "primitive_root",
]
