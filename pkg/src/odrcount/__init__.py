"""Counting polynomials of open de Rham spaces by closed formulas, symmetric functions and brute force."""

__version__ = "0.1.0"
