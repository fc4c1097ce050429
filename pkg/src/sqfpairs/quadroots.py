"""Roots of n^2 + a = 0 modulo q for a in {1, 2}, and the local count lambda(q1, q2).

Roots are reported in the range [1, q] rather than [0, q), so the single
"root" modulo 1 is 1 and the root 0 modulo 2 (for a = 2) is reported as 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .modmath import ResidueClass, crt, factorize, hensel_lift, omega, sqrt_mod_p

MAX_MODULUS = 10**12
BRUTE_FORCE_LIMIT = 10**6


@dataclass(frozen=True)
class RootSet:
    a: int
    modulus: int
    roots: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __contains__(self, n: object) -> bool:
        return n in self.roots


@dataclass(frozen=True)
class LocalCount:
    q1: int
    q2: int
    value: int


@dataclass
class LawReport:
    checked: list[int] = field(default_factory=list)
    violations: list[tuple[int, int, int, int]] = field(default_factory=list)
    outside_law: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _check_a(a: int) -> None:
    if a not in (1, 2):
        raise ValueError(f"a must be 1 or 2, got {a}")


def prime_power_roots(a: int, p: int, k: int) -> list[int]:
    """Roots of x^2 + a modulo p^k in [0, p^k), ascending."""
    _check_a(a)
    if p == 2:
        # x^2+1 and x^2+2 are never divisible by 4.
        if k >= 2:
            return []
        return [1] if a == 1 else [0]
    roots = sqrt_mod_p(-a, p)
    for j in range(1, k):
        roots = [hensel_lift(r, a, p, j) for r in roots]
    return sorted(roots)


@lru_cache(maxsize=1 << 15)
def roots_mod(a: int, q: int) -> RootSet:
    """All n in [1, q] with n^2 + a = 0 (mod q)."""
    _check_a(a)
    if q < 1:
        raise ValueError(f"modulus must be positive, got {q}")
    if q > MAX_MODULUS:
        raise ValueError(f"modulus {q} exceeds supported bound {MAX_MODULUS}")
    classes = [ResidueClass(0, 1)]
    for p, k in factorize(q).factors:
        local = prime_power_roots(a, p, k)
        if not local:
            return RootSet(a, q, ())
        pk = p**k
        classes = [crt(c, ResidueClass(r, pk)) for c in classes for r in local]
    roots = sorted(c.residue or q for c in classes)
    return RootSet(a, q, tuple(roots))


def brute_roots(a: int, q: int) -> list[int]:
    """Reference enumeration over [1, q]."""
    return [n for n in range(1, q + 1) if (n * n + a) % q == 0]


def brute_lambda(q1: int, q2: int) -> int:
    return sum(
        1 for n in range(1, q1 * q2 + 1) if (n * n + 1) % q1 == 0 and (n * n + 2) % q2 == 0
    )


def lam(q1: int, q2: int) -> LocalCount:
    """lambda(q1, q2): n in [1, q1*q2] with q1 | n^2+1 and q2 | n^2+2.

    Coprime arguments factor through CRT as |roots mod q1| * |roots mod q2|.
    Other arguments are brute-forced when q1*q2 <= 10**6.
    """
    if q1 < 1 or q2 < 1:
        raise ValueError("lambda needs positive moduli")
    if math.gcd(q1, q2) == 1:
        value = len(roots_mod(1, q1)) * len(roots_mod(2, q2))
    elif q1 * q2 <= BRUTE_FORCE_LIMIT:
        value = brute_lambda(q1, q2)
    else:
        raise ValueError(f"non-coprime lambda({q1}, {q2}) above brute-force bound")
    return LocalCount(q1, q2, value)


def verify_multiplicativity(bound: int) -> list[tuple[int, int, int, int, int, int]]:
    """Check lambda(q1 q2, q3 q4) = lambda(q1, q3) lambda(q2, q4) by brute force.

    Runs over every admissible tuple with q1 q2 q3 q4 <= bound and returns
    the violations as (q1, q2, q3, q4, lhs, rhs).
    """
    cache: dict[tuple[int, int], int] = {}

    def bl(x: int, y: int) -> int:
        if (x, y) not in cache:
            cache[x, y] = brute_lambda(x, y)
        return cache[x, y]

    bad = []
    for q1 in range(1, bound + 1):
        for q2 in range(1, bound // q1 + 1):
            if math.gcd(q1, q2) != 1:
                continue
            for q3 in range(1, bound // (q1 * q2) + 1):
                for q4 in range(1, bound // (q1 * q2 * q3) + 1):
                    if math.gcd(q3, q4) != 1 or math.gcd(q1 * q2, q3 * q4) != 1:
                        continue
                    lhs = bl(q1 * q2, q3 * q4)
                    rhs = bl(q1, q3) * bl(q2, q4)
                    if lhs != rhs:
                        bad.append((q1, q2, q3, q4, lhs, rhs))
    return bad


def _in_law_domain(d: int) -> bool:
    f = factorize(d).factors
    return all(e == 1 and p % 4 == 1 for p, e in f)


def root_count_law(dmax: int) -> LawReport:
    """Check #N1(d) = #N1'(d) = 2^omega(d).

    The law is asserted for odd square-free d whose primes are all 1 mod 4.
    Square-free d outside that set are listed in ``outside_law`` when the
    formula would fail for them.
    """
    report = LawReport()
    for d in range(1, dmax + 1):
        f = factorize(d).factors
        if any(e > 1 for _, e in f):
            continue
        n1, n1sq = len(roots_mod(1, d)), len(roots_mod(1, d * d))
        expected = 2 ** omega(d)
        if _in_law_domain(d):
            report.checked.append(d)
            if not n1 == n1sq == expected:
                report.violations.append((d, n1, n1sq, expected))
        elif not n1 == n1sq == expected:
            report.outside_law.append(d)
    return report


def squarefree_support(a: int, limit: int) -> list[int]:
    """Square-free d <= limit for which n^2 + a = 0 (mod d^2) is solvable.

    For a = 1 these are the products of primes 1 mod 4; for a = 2, of primes
    1 or 3 mod 8.  Both exclude 2 since 4 never divides n^2 + a.
    """
    _check_a(a)
    good = (1,) if a == 1 else (1, 3)
    modulus = 4 if a == 1 else 8
    out = []
    for d in range(1, limit + 1, 2):
        f = factorize(d).factors
        if all(e == 1 and p % modulus in good for p, e in f):
            out.append(d)
    return out

