"""Numerical laboratory for monotone Allen-Cahn solutions in the Grushin plane."""

__version__ = "0.1.0"
