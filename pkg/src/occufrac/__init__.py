"""Exact-arithmetic occupancy fractions for d-regular graphs: polynomial
counting, LP relaxations over local configurations, and their dual
certificates, all over rationals."""

from .exactmath import IntPolynomial, format_rational, parse_rational
from .graphs import Graph, canonical_key, generate, parse_edge_list, parse_graph6
from .lp import LinearProgram, LPSolution, dual_slacks, make_lp, solve
from .polynomials import (
    edge_occupancy,
    event_probability_oracle,
    independence_poly,
    matching_poly,
    occupancy,
    size_distribution,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "IntPolynomial",
    "LinearProgram",
    "LPSolution",
    "canonical_key",
    "dual_slacks",
    "edge_occupancy",
    "event_probability_oracle",
    "format_rational",
    "generate",
    "independence_poly",
    "make_lp",
    "matching_poly",
    "occupancy",
    "parse_edge_list",
    "parse_graph6",
    "parse_rational",
    "size_distribution",
    "solve",
    "__version__",
]
