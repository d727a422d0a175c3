"""Refined tropical curve counts with descendant point conditions."""

__version__ = "0.1.0"
