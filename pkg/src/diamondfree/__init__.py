"""Exact computations on diamond-free and forbidden-subposet families."""

__version__ = "0.1.0"
