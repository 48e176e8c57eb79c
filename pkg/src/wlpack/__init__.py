"""Weisfeiler-Leman refinement and exact fractional packing parameters."""

from .errors import (InvalidParameterError, ParseError, PreconditionError,
                     ResourceLimitError, WLPackError)
from .graph import Graph, GraphLabel
from .lp import RationalLP, solve
from .packing import PackingResult, SetSystem
from .wl import StableColoring, wl_equivalent, wl_refine

__all__ = [
    "Graph", "GraphLabel", "InvalidParameterError", "PackingResult", "ParseError",
    "PreconditionError", "RationalLP", "ResourceLimitError", "SetSystem",
    "StableColoring", "WLPackError", "solve", "wl_equivalent", "wl_refine",
]
