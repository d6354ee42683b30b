"""Combinatorial knot Floer homology of braid closures and the BRAID transverse invariant."""

from .braid import BraidWord, parse_braid, writhe, closure_components, self_linking, expected_invariant_gradings

__all__ = [
    "BraidWord",
    "parse_braid",
    "writhe",
    "closure_components",
    "self_linking",
    "expected_invariant_gradings",
]

__version__ = "0.1.0"
