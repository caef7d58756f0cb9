"""Exact computations with Macdonald polynomials, Fock-space vertex operators and
Hilbert-scheme fixed-point characters."""

__version__ = "0.1.0"
