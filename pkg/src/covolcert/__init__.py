"""Rigorous certificate engine for minimal-covolume lattices in SL_n(R)."""

__version__ = "0.1.0"
