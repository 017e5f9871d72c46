"""Desk-scale simulated tactile-manipulation workbench."""

__version__ = "0.1.0"
