"""Exact counting of hamiltonian cycles in small regular and nearly regular graphs."""

from __future__ import annotations

from .errors import (
    CapExceeded,
    FewhamError,
    FormatError,
    GraphError,
    PreconditionError,
    ValidationError,
)
from .graph import MultiGraph, complement, degree_profile, vertex_connectivity
from .canon import canonical_form
from .graph_io import parse_graph, parse_graph6, write_graph, write_graph6

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "FewhamError",
    "FormatError",
    "GraphError",
    "MultiGraph",
    "PreconditionError",
    "ValidationError",
    "canonical_form",
    "complement",
    "degree_profile",
    "parse_graph",
    "parse_graph6",
    "vertex_connectivity",
    "write_graph",
    "write_graph6",
]
