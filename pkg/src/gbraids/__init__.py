"""Workbench for Hurwitz orbits, parenthesized G-braids, and braided
G-crossed coherence over finite groups."""

__version__ = "0.1.0"
