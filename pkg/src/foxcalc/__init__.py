"""Fox calculus, Fox pairings of free groups and their cohomological companions."""

from .fox_calculus import Derivation, Side, left_fox, left_fox_derivative, right_fox, right_fox_derivative
from .fox_pairing import (
    FoxPairing,
    check_aug_intersection,
    check_axioms,
    check_boundary_condition,
    check_skew_identity,
    deserialize_pairing,
    evaluate,
    inner_pairing,
    pairing_from_derivations,
    serialize_pairing,
    transpose,
)
from .fundamental_solver import SurfacePresentation, solve_fundamental, verify_uniqueness
from .group_ring import CoeffRing, RingElem
from .kernels import BACKEND
from .words import Alphabet, Word

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "BACKEND",
    "CoeffRing",
    "Derivation",
    "FoxPairing",
    "RingElem",
    "Side",
    "SurfacePresentation",
    "Word",
    "check_aug_intersection",
    "check_axioms",
    "check_boundary_condition",
    "check_skew_identity",
    "deserialize_pairing",
    "evaluate",
    "inner_pairing",
    "left_fox",
    "left_fox_derivative",
    "pairing_from_derivations",
    "right_fox",
    "right_fox_derivative",
    "serialize_pairing",
    "solve_fundamental",
    "transpose",
    "verify_uniqueness",
]
