"""Exact computations for the residual spectrum of split SO(2n)."""

__version__ = "0.1.0"
