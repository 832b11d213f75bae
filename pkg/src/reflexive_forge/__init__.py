"""Exact tools for reflexive polytopes built from perfect graphs and simplicial complexes."""

__version__ = "0.1.0"
