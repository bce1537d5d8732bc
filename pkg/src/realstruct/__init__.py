"""Exact computations with real structures on complex tori, triangle curves,
hyperelliptic surfaces and Blanchard-Calabi threefolds."""

__version__ = "0.1.0"
