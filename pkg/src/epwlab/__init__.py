"""Exact computations with EPW sextics, their double covers and the associated K3 surfaces."""

__version__ = "0.1.0"
