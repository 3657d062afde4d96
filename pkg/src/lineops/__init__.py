"""Exact projective line arrangements, incidence operators, and their dynamics."""

__version__ = "0.1.0"
