"""Longest simple paths between two vertices of a rectangular grid graph.

The sequential solver runs in time linear in the number of vertices; the
parallel module simulates the constant-work SIMD version with one virtual
processor per vertex.  :mod:`meshlp.oracle` holds the exhaustive search used
as ground truth on small meshes.
"""
from .grid import (Color, GridError, IdenticalEndpoints, OutOfBounds, ProblemClass, Rect,
                   Transform, Vertex, classify, color, color_compatible, forbidden_conditions,
                   is_hamiltonian, normalize, upper_bound)
from .oracle import (BudgetExceeded, SearchBudget, brute_is_hamiltonian, brute_longest,
                     validate_cycle, validate_path)
from .parallel import (BrokenChain, CycleDetected, OpCounter, ProcessorContext, SuccessorMap,
                       UnknownPattern, combine_phase, peel_vars, reconstruct, region_of,
                       run_parallel, successor_hamcycle, successor_pattern, trisect_vars)
from .sequential import (Cycle, JunctionAssignment, Path, Peeling, Trisection, adjust_peeling,
                         corner_ham_path, find_junctions, hamiltonian_cycle, is_proper,
                         longest_path, merge_cycle_path, merge_cycles, peel, solve_no_junction,
                         solve_small, solve_strip1, solve_strip2, trisect)

__all__ = [
    "Color", "GridError", "IdenticalEndpoints", "OutOfBounds", "ProblemClass", "Rect",
    "Transform", "Vertex", "classify", "color", "color_compatible", "forbidden_conditions",
    "is_hamiltonian", "normalize", "upper_bound",
    "BudgetExceeded", "SearchBudget", "brute_is_hamiltonian", "brute_longest",
    "validate_cycle", "validate_path",
    "BrokenChain", "CycleDetected", "OpCounter", "ProcessorContext", "SuccessorMap",
    "UnknownPattern", "combine_phase", "peel_vars", "reconstruct", "region_of",
    "run_parallel", "successor_hamcycle", "successor_pattern", "trisect_vars",
    "Cycle", "JunctionAssignment", "Path", "Peeling", "Trisection", "adjust_peeling",
    "corner_ham_path", "find_junctions", "hamiltonian_cycle", "is_proper",
    "longest_path", "merge_cycle_path", "merge_cycles", "peel", "solve_no_junction",
    "solve_small", "solve_strip1", "solve_strip2", "trisect",
]
