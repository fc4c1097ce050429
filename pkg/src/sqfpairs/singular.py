"""The density constant sigma, two ways.

``sigma_product`` multiplies the local factors 1 - (2 + (-1/p) + (-2/p))/p^2
over odd primes p <= P.  ``sigma_sum`` adds mu(d1) mu(d2) lambda(d1^2, d2^2)
/ (d1 d2)^2 over coprime square-free pairs with d1 d2 <= Dmax.  Each result
carries a tail bound, and the two must agree within the sum of their tails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .modmath import legendre, mobius, small_primes
from .quadroots import lam, prime_power_roots, squarefree_support

EXACT_PRODUCT_LIMIT = 1000


@dataclass(frozen=True)
class SigmaEstimate:
    value: float
    method: str
    truncation: int
    tail_bound: float
    exact: Fraction | None = None

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "method": self.method,
            "truncation": self.truncation,
            "tail_bound": self.tail_bound,
        }


def local_factor(p: int) -> Fraction:
    """1 - ((-1/p) + (-2/p) + 2) / p^2 for an odd prime p."""
    if p == 2:
        raise ValueError("the product runs over odd primes only")
    return 1 - Fraction(legendre(-1, p) + legendre(-2, p) + 2, p * p)


def local_factor_from_roots(p: int) -> Fraction:
    """Same factor, written as 1 - (lambda(p^2, 1) + lambda(1, p^2)) / p^2."""
    if p == 2:
        raise ValueError("the product runs over odd primes only")
    count = len(prime_power_roots(1, p, 2)) + len(prime_power_roots(2, p, 2))
    return 1 - Fraction(count, p * p)


def sigma_product(P: int, factor=None) -> SigmaEstimate:
    """Euler product over odd primes up to P.

    Up to P = 1000 the product is exact; beyond that the logs of the factors
    are summed with ``math.fsum``.  The tail bound 4/P uses
    sum_{p > P} 4/p^2 < 4/P.
    """
    if P < 3:
        raise ValueError(f"prime bound must be >= 3, got {P}")
    factor = factor or local_factor
    primes = small_primes(P)[1:]
    exact = None
    if P <= EXACT_PRODUCT_LIMIT:
        exact = Fraction(1)
        for p in primes:
            exact *= factor(p)
        value = float(exact)
    else:
        logs = []
        for p in primes:
            f = factor(p)
            logs.append(math.log1p((f.numerator - f.denominator) / f.denominator))
        value = math.exp(math.fsum(logs))
    return SigmaEstimate(value, "product", P, 4.0 / P, exact)


@lru_cache(maxsize=4)
def _tail_weights(limit: int) -> np.ndarray:
    """g(n) = prod_{p | n} (2 + (-1/p) + (-2/p)) on square-free n, 0 elsewhere.

    g(n) is the sum over coprime splittings n = d1 d2 of lambda(d1^2, 1) *
    lambda(1, d2^2), i.e. the total weight of all pairs with d1 d2 = n.
    """
    g = np.ones(limit + 1, dtype=np.float64)
    g[0] = 0
    for p in small_primes(limit):
        if p == 2:
            local = 0
        else:
            local = 2 + (1 if p % 4 == 1 else -1) + (1 if p % 8 in (1, 3) else -1)
        g[p::p] *= local
        g[p * p :: p * p] = 0
    return g


def _tau4_tail(N: int) -> float:
    """Bound for sum_{n > N} tau(n)^2 / n^2.

    Uses tau^2 <= tau_4, sum_{n <= x} tau_4(n) <= x (1 + log x)^3 and partial
    summation: the tail is at most 2 * int_N^inf (1 + log t)^3 / t^2 dt.
    """
    u = 1 + math.log(N)
    return 2 * (u**3 + 3 * u**2 + 6 * u + 6) / N


def sum_tail_bound(Dmax: int) -> float:
    """Safe overcount of the absolute tail of the double sum beyond d1 d2 > Dmax."""
    N = 10 * Dmax
    g = _tail_weights(N)
    n = np.arange(Dmax + 1, N + 1, dtype=np.float64)
    return math.fsum((g[Dmax + 1 :] / (n * n)).tolist()) + _tau4_tail(N)


def sigma_sum(Dmax: int) -> SigmaEstimate:
    """Truncated double sum over d1 d2 <= Dmax.

    Pairs where d1 has a prime 3 mod 4, or d2 a prime 5 or 7 mod 8, or either
    is even, have lambda = 0 and are skipped.  Terms are added in ascending
    (d1 d2, d1) order.
    """
    if Dmax < 1:
        raise ValueError(f"Dmax must be >= 1, got {Dmax}")
    s1 = squarefree_support(1, Dmax)
    s2 = squarefree_support(2, Dmax)
    terms = []
    for d1 in s1:
        for d2 in s2:
            if d1 * d2 > Dmax:
                break
            if math.gcd(d1, d2) != 1:
                continue
            q = d1 * d1 * d2 * d2
            value = mobius(d1) * mobius(d2) * lam(d1 * d1, d2 * d2).value
            terms.append((d1 * d2, d1, value / q))
    terms.sort()
    value = math.fsum(t[2] for t in terms)
    return SigmaEstimate(value, "sum", Dmax, sum_tail_bound(Dmax))


@lru_cache(maxsize=1)
def default_sigma() -> float:
    """sigma from the product over p <= 10**6, as used in census reports."""
    return sigma_product(10**6).value
