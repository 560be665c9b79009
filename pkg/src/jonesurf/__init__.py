"""Colored Jones degrees, Jones slopes and normal-surface searches for Jones surfaces."""

__version__ = "0.1.0"
