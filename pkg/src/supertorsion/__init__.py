"""Verification toolkit for torsion points on superelliptic curves y^n = x^d + 1."""

__version__ = "0.1.0"
