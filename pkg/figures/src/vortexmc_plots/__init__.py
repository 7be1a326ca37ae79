"""Batch figure rendering for vortexmc snapshot files."""

__version__ = "0.1.0"
