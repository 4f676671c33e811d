"""Reflexive and IDP lattice polytopes built from posets and perfect graphs."""

__version__ = "0.1.0"
