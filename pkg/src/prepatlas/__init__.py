"""Preperiodic parameters of the quadratic family x^2 + c: exact arithmetic,
orbit decisions, Cantor intervals, capacities and classification."""

__version__ = "0.1.0"
