"""Exact computations for derived quotients of path algebras by idempotent ideals."""

__version__ = "0.1.0"
