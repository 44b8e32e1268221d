"""Exact categorical-center computations for small premodular categories."""

__version__ = "0.1.0"
