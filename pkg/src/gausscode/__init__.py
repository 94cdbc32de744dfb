"""Decide whether a Gauss code is realized by a generic closed plane curve."""

from .errors import (
    BadToken,
    BitCountMismatch,
    DimensionMismatch,
    GaussCodeError,
    LimitExceeded,
    OccurrenceCount,
    SubsetOutOfRange,
    UnknownSymbol,
)
from .gf2 import Gf2Diagonal, Gf2Matrix, is_idempotent, mat_add, mat_mul, rank
from .interlace import SimpleGraph, interlaced, interlacement_graph, interlacement_matrix
from .lift import (
    DiagonalLift,
    LoopedGraph,
    RealizabilityReport,
    Verdict,
    decide_realizable,
    find_lifts,
    is_orthoprojection,
    satisfies_property_p,
)
from .oracle import build_map, count_faces, oracle_realizable
from .word import CanonicalWord, DoubleOccurrenceWord, canonicalize, enumerate_words, parse

__version__ = "0.1.0"
