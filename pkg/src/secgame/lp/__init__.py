"""Exact rational linear programming with verifiable certificates."""
from ._backend import DEFAULT as BACKEND, available as available_backends
from .model import (
    EQ,
    FEASIBILITY,
    GE,
    LE,
    MAXIMIZE,
    MINIMIZE,
    CapExceeded,
    Certificate,
    Constraint,
    LinearProgram,
    LpSolution,
    MalformedProgram,
    Status,
    Variable,
    check_solution,
    set_dump_stream,
    solve_lp,
)

__all__ = [
    "BACKEND", "available_backends", "EQ", "FEASIBILITY", "GE", "LE", "MAXIMIZE",
    "MINIMIZE", "CapExceeded", "Certificate", "Constraint", "LinearProgram",
    "LpSolution", "MalformedProgram", "Status", "Variable", "check_solution",
    "set_dump_stream", "solve_lp",
]
