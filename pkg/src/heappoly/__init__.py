"""Characteristic polynomials of graphs and hypergraphs through heaps of pieces."""

from .core import Digraph, MultiHypergraph, SimpleHypergraph, parse_host, read_host
from .hyper import charpoly, coefficients, root_series
from .series import EdgePolynomial, TruncatedSeries

__version__ = "0.1.0"

__all__ = [
    "Digraph",
    "EdgePolynomial",
    "MultiHypergraph",
    "SimpleHypergraph",
    "TruncatedSeries",
    "charpoly",
    "coefficients",
    "parse_host",
    "read_host",
    "root_series",
]
