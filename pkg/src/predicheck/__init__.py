"""Proof-checking kernels for finite-type arithmetic and a sorted dependent type theory."""

__version__ = "0.1.0"
