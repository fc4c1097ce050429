"""Exact integer and modular arithmetic.

Everything here works on Python ints, so intermediate products never
overflow.  Factorization is trial division by small primes followed by
Miller-Rabin and Pollard rho (Brent variant) on whatever is left.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

MAX_FACTOR_INPUT = 1 << 96
TRIAL_BOUND = 1000


class ResidueClass(NamedTuple):
    residue: int
    modulus: int


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def __iter__(self):
        return iter(self.factors)


def small_primes(limit: int) -> list[int]:
    """Primes <= limit by a plain sieve of Eratosthenes."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


_TRIAL_PRIMES = small_primes(TRIAL_BOUND)

# Deterministic witness sets (Jaeschke; Sorenson-Webster).
_MR_BASES_64 = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)
_MR_BASES_WIDE = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)


def is_prime(n: int) -> bool:
    """Miller-Rabin.

    Deterministic below 3.3e24; above that the 20 prime bases make a false
    positive astronomically unlikely, which is all the factorizer needs.
    """
    if n < 2:
        return False
    for p in _TRIAL_PRIMES[:25]:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_BASES_64 if n < 1 << 64 else _MR_BASES_WIDE
    for a in bases:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite n."""
    for c in range(1, n):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed on {n}")


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    root = math.isqrt(n)
    if root * root == n:
        _split(root, out)
        _split(root, out)
        return
    f = _brent(n)
    _split(f, out)
    _split(n // f, out)


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> Factorization:
    """Prime factorization of 1 <= n <= 2**96, primes ascending."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    if n > MAX_FACTOR_INPUT:
        raise ValueError(f"factorize supports n <= 2**96, got {n}")
    found: dict[int, int] = {}
    m = n
    for p in _TRIAL_PRIMES:
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    if m > 1:
        _split(m, found)
    return Factorization(n, tuple(sorted(found.items())))


def mobius(n: int) -> int:
    f = factorize(n).factors
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def omega(n: int) -> int:
    """Number of distinct prime factors."""
    return len(factorize(n).factors)


def tau(n: int) -> int:
    return math.prod(e + 1 for _, e in factorize(n).factors)


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(n).factors)


def _require_odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion."""
    _require_odd_prime(p)
    t = pow(a % p, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


def mod_inv(n: int, q: int) -> int:
    """Inverse of n modulo q in [0, q); the inverse modulo 1 is 0."""
    if q < 1:
        raise ValueError(f"modulus must be positive, got {q}")
    if math.gcd(n, q) != 1:
        raise ValueError(f"{n} is not invertible modulo {q}")
    if q == 1:
        return 0
    return pow(n, -1, q)


def sqrt_mod_p(a: int, p: int) -> list[int]:
    """All square roots of a modulo the odd prime p, ascending (Tonelli-Shanks)."""
    _require_odd_prime(p)
    a %= p
    if a == 0:
        return [0]
    if pow(a, (p - 1) // 2, p) != 1:
        return []
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return sorted({r, p - r})


def hensel_lift(r: int, a: int, p: int, k: int) -> int:
    """Lift a root of x^2 + a modulo p^k to the unique root modulo p^(k+1) above it."""
    _require_odd_prime(p)
    pk = p**k
    if (r * r + a) % pk:
        raise ValueError(f"{r} is not a root of x^2+{a} modulo {p}^{k}")
    if r % p == 0:
        raise ValueError(f"derivative vanishes: {p} divides {r}")
    pk1 = pk * p
    r %= pk
    return (r - (r * r + a) * mod_inv(2 * r, pk1)) % pk1


def hensel_lift_sq(r: int, a: int, p: int) -> int:
    """Root of x^2 + a modulo p^2 reducing to r modulo p."""
    return hensel_lift(r % p, a, p, 1)


def crt(r1: ResidueClass, r2: ResidueClass) -> ResidueClass:
    (a1, m1), (a2, m2) = r1, r2
    if math.gcd(m1, m2) != 1:
        raise ValueError(f"moduli {m1} and {m2} are not coprime")
    m = m1 * m2
    x = (a1 + m1 * ((a2 - a1) * mod_inv(m1, m2) % m2)) % m
    return ResidueClass(x, m)


def is_square(n: int) -> tuple[bool, int]:
    """(True, root) when n is a perfect square, else (False, isqrt(n))."""
    if n < 0:
        return False, 0
    r = math.isqrt(n)
    return r * r == n, r


def icbrt(n: int) -> int:
    """Smallest b >= 0 with b**3 >= n."""
    if n <= 0:
        return 0
    b = round(n ** (1 / 3))
    while b**3 < n:
        b += 1
    while b > 0 and (b - 1) ** 3 >= n:
        b -= 1
    return b
