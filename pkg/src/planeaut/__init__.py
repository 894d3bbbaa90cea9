"""Exact tools for plane polynomial automorphisms and planes bZ^n - a."""

__version__ = "0.1.0"
