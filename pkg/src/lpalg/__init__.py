"""Exact computations with Leavitt path algebras, graded rings and partial crossed products."""

from .classify import ClassificationReport, classify_lpa
from .errors import CapExceeded, LpalgError, ParseError, PreconditionError
from .grading import (
    FiniteGroup,
    GradedAlgebra,
    GradingReport,
    IntegerGroup,
    cyclic_group,
    grading_check,
    induce_quotient,
    laurent_even_example,
    parse_graded,
    restrict_subgroup,
)
from .graph import Graph, Path, analyze, enumerate_paths, parse_graph
from .lpa import EpsilonUnit, LeavittPathAlgebra, MatrixDecomposition, NormalElement, TraceInverseSystem
from .partial import AxiomReport, PartialActionSystem, check_axioms, classify_crossed, crossed_product, parse_partial
from .rings import RingDescriptor, RingValue, integers, invert, modular, parse_ring, product, rationals

__all__ = [
    "AxiomReport", "CapExceeded", "ClassificationReport", "EpsilonUnit", "FiniteGroup", "GradedAlgebra",
    "GradingReport", "Graph", "IntegerGroup", "LeavittPathAlgebra", "LpalgError", "MatrixDecomposition",
    "NormalElement", "ParseError", "PartialActionSystem", "Path", "PreconditionError", "RingDescriptor",
    "RingValue", "TraceInverseSystem", "analyze", "check_axioms", "classify_crossed", "classify_lpa",
    "crossed_product", "cyclic_group", "enumerate_paths", "grading_check", "induce_quotient", "integers",
    "invert", "laurent_even_example", "modular", "parse_graded", "parse_graph", "parse_partial", "parse_ring",
    "product", "rationals", "restrict_subgroup",
]
