"""Toolkit for codimension-2 subschemes of projective space: resolutions,
cohomology tables, deficiency-sum invariants, liaison, and Hilbert-scheme
dimension bookkeeping over a finite prime field."""

from .ring import PolyRing, Poly, DEFAULT_CHAR

__all__ = ["PolyRing", "Poly", "DEFAULT_CHAR"]
__version__ = "0.1.0"
