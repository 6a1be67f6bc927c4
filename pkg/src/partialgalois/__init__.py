"""Partial Galois theory over finite commutative rings."""
