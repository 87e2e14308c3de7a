"""Dual-rhombus toolkit for the Hat/Turtle/Spectre monotile family."""

__version__ = "0.1.0"
