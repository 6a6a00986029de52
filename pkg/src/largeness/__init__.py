"""Largeness certificates for finitely presented groups."""

__version__ = "0.1.0"
