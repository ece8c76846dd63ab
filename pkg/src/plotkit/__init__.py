"""Finite plots: partial, possibly non-associative and non-unital composition structures."""

from .core import (
    Arrow,
    AssociativityProfile,
    ClassificationReport,
    Plot,
    PlotError,
    ValidationError,
    associativity_profile,
    class_product,
    classify,
    compute_identities,
    degrees,
    dual,
    hom,
    hom_from_composable,
    hom_into_composable,
    make_plot,
    regular_representation,
    validate,
)
from .parens import Leaf, Node, enumerate_parens, eval_paren, format_paren, parse_paren, substitute

__all__ = [
    "Arrow",
    "AssociativityProfile",
    "ClassificationReport",
    "Leaf",
    "Node",
    "Plot",
    "PlotError",
    "ValidationError",
    "associativity_profile",
    "class_product",
    "classify",
    "compute_identities",
    "degrees",
    "dual",
    "enumerate_parens",
    "eval_paren",
    "format_paren",
    "hom",
    "hom_from_composable",
    "hom_into_composable",
    "make_plot",
    "parse_paren",
    "regular_representation",
    "substitute",
    "validate",
]
