"""Eigensystems of the edge-based Laplacian on unit-length metric graphs."""

from .eigensystem import Eigensystem, Entry, assemble, fd_oracle
from .graph import Graph, GraphFormatError, parse_graph

__all__ = ["Eigensystem", "Entry", "Graph", "GraphFormatError", "assemble", "fd_oracle", "parse_graph"]
__version__ = "0.1.0"
