"""Exact computations with Hall-Littlewood vertex operators and their linear transformations."""

__version__ = "0.1.0"
