"""Exact solver for Subset Directed Feedback Vertex Set.

Given a digraph G, a set S of arcs and a budget k, find at most k vertices
whose removal leaves no closed walk through an arc of S. The solver is a
randomized fixed-parameter algorithm (iterative compression, shadow covering
by sampled important separators, torso contraction and branching), with
exhaustive and deterministic sampling modes for small inputs and a
brute-force oracle for testing.
"""

from .digraph import Digraph, SccDecomposition, build, reach_backward, reach_forward, scc
from .errors import (CapacityError, ContractViolation, GraphError, InseparableError,
                     InternalConsistencyError, OracleBudgetError, ParseError, SdfvsError,
                     SearchLimitExceeded)
from .instances import CompressionInstance, EdgeInstance, Solution, VertexInstance, has_s_closed_walk
from .kernels import BACKEND
from .sampling import SamplingConfig
from .solver import Solver, SolverConfig, solve, verify_solution

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CapacityError", "CompressionInstance", "ContractViolation", "Digraph",
    "EdgeInstance", "GraphError", "InseparableError", "InternalConsistencyError",
    "OracleBudgetError", "ParseError", "SamplingConfig", "SccDecomposition", "SdfvsError",
    "SearchLimitExceeded", "Solution", "Solver", "SolverConfig", "VertexInstance", "build",
    "has_s_closed_walk", "reach_backward", "reach_forward", "scc", "solve", "verify_solution",
]
