"""Exact computations with quasi-socle ideals Q : m^q."""

__version__ = "0.1.0"
