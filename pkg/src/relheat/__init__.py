"""Relativistic heat polynomials, one-sided stable densities and square-root evolution."""

__version__ = "0.1.0"
