"""Exact verification of binomial Toeplitz+Hankel determinant evaluations."""

__version__ = "0.1.0"
