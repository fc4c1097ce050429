"""Segmented sieve for square-freeness of n^2+1 and n^2+2.

For each odd prime p up to the cube root of the largest value, the residue
classes n = s (mod p^2) with p^2 | n^2+a are struck out.  Each value is also
divided once by every small prime dividing it.  A survivor then has a
cofactor whose primes all exceed the bound, so it is at most a product of
two primes and fails to be square-free exactly when it is a perfect square.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .modmath import icbrt, is_squarefree as _factor_is_squarefree, small_primes
from .quadroots import prime_power_roots

SEGMENT = 1 << 20
# n^2 + 2 must stay below 2**63 in int64 arithmetic.
MAX_N = 3_000_000_000


@dataclass
class SquarefreeFlags:
    lo: int
    hi: int
    flags1: np.ndarray
    flags2: np.ndarray
    marks: int = 0

    def both(self) -> np.ndarray:
        return self.flags1 & self.flags2


def is_squarefree(N: int) -> bool:
    """Oracle: square-freeness by full factorization."""
    if N < 1:
        raise ValueError(f"is_squarefree needs N >= 1, got {N}")
    return _factor_is_squarefree(N)


def default_prime_bound(hi: int) -> int:
    return max(2, icbrt(hi * hi + 2))


@lru_cache(maxsize=8)
def _sieving_data(a: int, bound: int) -> tuple[tuple[int, tuple[int, ...], tuple[int, ...]], ...]:
    """(p, roots mod p, roots mod p^2) for each odd prime p <= bound with roots."""
    out = []
    for p in small_primes(bound):
        if p == 2:
            continue
        r1 = prime_power_roots(a, p, 1)
        if r1:
            out.append((p, tuple(r1), tuple(prime_power_roots(a, p, 2))))
    return tuple(out)


def _first_index(lo: int, residue: int, modulus: int) -> int:
    """Offset of the first n >= lo with n = residue (mod modulus)."""
    return (residue - lo) % modulus


def _sieve_one(a: int, lo: int, hi: int, bound: int) -> tuple[np.ndarray, int]:
    n = np.arange(lo, hi + 1, dtype=np.int64)
    cof = n * n + a
    flags = np.ones(n.size, dtype=bool)
    marks = 0
    # 4 never divides n^2+1 or n^2+2, so 2 is removed once when it divides.
    even = (cof & 1) == 0
    cof[even] //= 2
    for p, r1, r2 in _sieving_data(a, bound):
        p2 = p * p
        for s in r2:
            sl = slice(_first_index(lo, s, p2), None, p2)
            hit = flags[sl]
            marks += hit.size
            hit[:] = False
        for r in r1:
            cof[_first_index(lo, r, p) :: p] //= p
    root = np.rint(np.sqrt(cof.astype(np.float64))).astype(np.int64)
    square = np.zeros_like(flags)
    # float64 sqrt can be off by one above 2**52
    for k in (-1, 0, 1):
        rk = root + k
        square |= rk * rk == cof
    square &= cof > 1
    flags &= ~square
    return flags, marks


def sieve_flags(
    lo: int, hi: int, prime_bound: int | None = None, *, segment: int = SEGMENT, threads: int = 1
) -> SquarefreeFlags:
    """Square-freeness of n^2+1 and n^2+2 for lo <= n <= hi.

    ``prime_bound`` must satisfy prime_bound**3 >= hi**2 + 2; the default is
    the smallest such integer.  Segments are merged in order, so the result
    does not depend on ``threads``.
    """
    if not 1 <= lo <= hi:
        raise ValueError(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
    if hi > MAX_N:
        raise ValueError(f"hi={hi} exceeds int64-safe bound {MAX_N}")
    need = default_prime_bound(hi)
    if prime_bound is None:
        prime_bound = need
    elif prime_bound**3 < hi * hi + 2:
        raise ValueError(f"prime_bound {prime_bound} is below the cube-root bound {need}")

    starts = list(range(lo, hi + 1, segment))

    def work(start: int):
        end = min(start + segment - 1, hi)
        f1, m1 = _sieve_one(1, start, end, prime_bound)
        f2, m2 = _sieve_one(2, start, end, prime_bound)
        return f1, f2, m1 + m2

    if threads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, starts))
    else:
        parts = [work(s) for s in starts]
    return SquarefreeFlags(
        lo,
        hi,
        np.concatenate([p[0] for p in parts]),
        np.concatenate([p[1] for p in parts]),
        sum(p[2] for p in parts),
    )


def mark_budget(lo: int, hi: int, prime_bound: int) -> float:
    """Upper bound on strike-outs: 2*len/p^2 + 2 per sieving prime, both polynomials."""
    length = hi - lo + 1
    return sum(
        2 * length / (p * p) + 2 for a in (1, 2) for p, _, _ in _sieving_data(a, prime_bound)
    )
