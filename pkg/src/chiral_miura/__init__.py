"""Exact computations with quantum Miura fields and the algebra L(nu, hbar)."""

__version__ = "0.1.0"
