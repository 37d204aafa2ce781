"""Solvable and quasi-exactly solvable periodic potentials of Lame type."""

__version__ = "0.1.0"
