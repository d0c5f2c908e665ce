"""Gröbner bases over prime fields and the nodal-surface verification pipeline."""

__version__ = "0.1.0"
