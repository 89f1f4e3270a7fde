"""Exact computations for crystallographic and Bieberbach groups."""

__version__ = "0.1.0"
