"""Hermite forms of matrices of Ore polynomials over Q(z)."""
