"""Hermite expansions, related integral transforms, and decay diagnostics."""

__version__ = "0.1.0"
