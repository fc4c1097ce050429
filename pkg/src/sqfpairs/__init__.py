"""Consecutive square-free values of n^2+1 and n^2+2: exact counts, the
singular series, and the exponential-sum machinery behind the error term."""

from .census import gamma_count, gamma_decomposed, gamma_direct
from .quadroots import lam, roots_mod
from .singular import sigma_product, sigma_sum

__all__ = [
    "gamma_count",
    "gamma_decomposed",
    "gamma_direct",
    "lam",
    "roots_mod",
    "sigma_product",
    "sigma_sum",
]
__version__ = "0.1.0"
