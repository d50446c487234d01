from .model import TAGS, Constraint, ConstraintModel, build_model
from .search import INFEASIBLE, SATISFIABLE, TIMEOUT, MalformedAssignment, SolveOutcome, SolveStats, decode, solve

__all__ = [
    "TAGS", "Constraint", "ConstraintModel", "build_model",
    "INFEASIBLE", "SATISFIABLE", "TIMEOUT", "MalformedAssignment",
    "SolveOutcome", "SolveStats", "decode", "solve",
]
