"""Exact verification of the numerical skeleton of the superrigidity theorem."""

__version__ = "0.1.0"
