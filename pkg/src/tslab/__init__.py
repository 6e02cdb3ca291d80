"""Exact T-system, tiling and tropical dynamics toolkit."""

__version__ = "0.1.0"
