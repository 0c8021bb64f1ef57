"""Jet calculus and conditional symmetries of PDEs in two independent variables."""

from ._core import (
    CondsymError,
    DeterminingSystem,
    Equation,
    Form,
    ParseError,
    VectorField,
    Workspace,
    classify,
    conditional_residual,
    construct_equation,
    default_corpus_root,
    determining_system,
    is_conditional_symmetry,
    is_multiple,
    is_point_symmetry,
    point_symmetry_residual,
    reduce,
    run_corpus,
    verify_problem,
)

__all__ = [
    "CondsymError",
    "DeterminingSystem",
    "Equation",
    "Form",
    "ParseError",
    "VectorField",
    "Workspace",
    "classify",
    "conditional_residual",
    "construct_equation",
    "default_corpus_root",
    "determining_system",
    "is_conditional_symmetry",
    "is_multiple",
    "is_point_symmetry",
    "point_symmetry_residual",
    "reduce",
    "run_corpus",
    "verify_problem",
]
