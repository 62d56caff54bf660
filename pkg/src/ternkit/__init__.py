"""Computational toolkit for ternary operator algebra."""

__version__ = "0.1.0"
