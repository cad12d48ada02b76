"""Exact verification engine for the geometry of prime Fano threefolds of degree 10."""

__version__ = "0.1.0"
