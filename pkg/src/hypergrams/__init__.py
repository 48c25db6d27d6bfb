"""Hypergrams: context hypergraphs with anticommutation graphs, their Pauli
assignments, and the contextuality degree of the resulting sign functions."""

from .assign import (
    ClassicalAssignment,
    NotAssignable,
    PauliAssignment,
    classical_assignment_commutative,
    classical_sign_function,
    pauli_assignment_from_anticommutations,
    sign_function,
    transfer_classical,
    unsatisfied_set,
    verify_assignment,
)
from .degree import (
    DegreeResult,
    HeuristicParams,
    degree_bruteforce,
    degree_exact,
    degree_heuristic,
    is_contextual,
    noncontextual_bound,
)
from .gf2 import BitMatrix, BitVector
from .hypergram import Hypergram, InvalidHypergram, RawHypergram, is_assignable, validate
from .pauli import PauliObservable, PhasedPauli

__all__ = [
    "BitMatrix",
    "BitVector",
    "ClassicalAssignment",
    "DegreeResult",
    "HeuristicParams",
    "Hypergram",
    "InvalidHypergram",
    "NotAssignable",
    "PauliAssignment",
    "PauliObservable",
    "PhasedPauli",
    "RawHypergram",
    "classical_assignment_commutative",
    "classical_sign_function",
    "degree_bruteforce",
    "degree_exact",
    "degree_heuristic",
    "is_assignable",
    "is_contextual",
    "noncontextual_bound",
    "pauli_assignment_from_anticommutations",
    "sign_function",
    "transfer_classical",
    "unsatisfied_set",
    "validate",
    "verify_assignment",
]
