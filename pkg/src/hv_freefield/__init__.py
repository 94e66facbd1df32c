"""Exact symbolic engine for the free-field realization of the twisted Heisenberg-Virasoro algebra."""

__version__ = "0.1.0"
