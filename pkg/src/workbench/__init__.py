"""Refinement-checked exact linear algebra and proof-pattern mining."""

__version__ = "0.1.0"
