"""Canonical Grothendieck polynomials, their duals, and a free-fermion oracle."""

__version__ = "0.1.0"
