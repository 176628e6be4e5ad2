"""Desk-scale verification of 3-orbit groups: constructions, automorphism orbits, subspace censuses."""

__version__ = "0.1.0"
