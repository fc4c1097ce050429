"""Exact counts of n <= X with n^2+1 and n^2+2 both square-free.

``gamma_direct`` reads the sieve.  ``gamma_decomposed`` expands both
square-free indicators as sum_{d^2 | m} mu(d) and adds up
mu(d1) mu(d2) Sigma(X, d1^2, d2^2) over coprime pairs, split at d1 d2 <= z.
The two routes share no code beyond root finding, so agreement is a real check.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .modmath import ResidueClass, crt, mobius
from .quadroots import roots_mod, squarefree_support
from .sieve import sieve_flags
from .singular import default_sigma

MAX_X = 10**7


@dataclass(frozen=True)
class PairCensus:
    X: int
    gamma: int
    sigma_x: float
    abs_err: float
    rel_err: float


@dataclass(frozen=True)
class DecompositionPlan:
    X: int
    z: float

    def __post_init__(self):
        if not math.sqrt(self.X) <= self.z < self.X:
            raise ValueError(f"z={self.z} must satisfy sqrt(X) <= z < X for X={self.X}")

    @classmethod
    def default(cls, X: int) -> "DecompositionPlan":
        return cls(X, X ** (8 / 9))


@dataclass(frozen=True)
class Decomposition:
    gamma1: int
    gamma2: int
    total: int
    pairs: int


def count_in_progression(X: int, q: int, n: int) -> int:
    """#{1 <= m <= X : m = n (mod q)} for a representative 1 <= n <= q."""
    if not 1 <= n <= q:
        raise ValueError(f"representative {n} not in [1, {q}]")
    return (X - n) // q + 1 if n <= X else 0


def _joint_classes(d1: int, d2: int) -> list[int]:
    """The lambda(d1^2, d2^2) residue classes, in [1, d1^2 d2^2]."""
    q1, q2 = d1 * d1, d2 * d2
    q = q1 * q2
    return [
        crt(ResidueClass(r1 % q1, q1), ResidueClass(r2 % q2, q2)).residue or q
        for r1 in roots_mod(1, q1)
        for r2 in roots_mod(2, q2)
    ]


def sigma_count(X: int, d1: int, d2: int) -> int:
    """#{n <= X : d1^2 | n^2+1, d2^2 | n^2+2}, summed over the CRT root classes."""
    if math.gcd(d1, d2) != 1:
        raise ValueError(f"d1={d1} and d2={d2} are not coprime")
    q = d1 * d1 * d2 * d2
    return sum(count_in_progression(X, q, n) for n in _joint_classes(d1, d2))


def gamma_count(X: int, threads: int = 1) -> int:
    if not 1 <= X <= MAX_X:
        raise ValueError(f"X must lie in [1, {MAX_X}], got {X}")
    return int(np.count_nonzero(sieve_flags(1, X, threads=threads).both()))


def census(X: int, gamma: int, sigma: float | None = None) -> PairCensus:
    sigma = default_sigma() if sigma is None else sigma
    sx = sigma * X
    err = abs(gamma - sx)
    return PairCensus(X, gamma, sx, err, err / X)


def gamma_direct(X: int, threads: int = 1, sigma: float | None = None) -> PairCensus:
    return census(X, gamma_count(X, threads), sigma)


def _divisor_support(a: int, X: int) -> dict[int, list[int]]:
    """n <= X -> square-free d > 1 with d^2 | n^2 + a, from the root lists mod d^2."""
    found: dict[int, list[int]] = defaultdict(list)
    for d in squarefree_support(a, X):
        if d == 1:
            continue
        q = d * d
        for r in roots_mod(a, q):
            for n in range(r, X + 1, q):
                found[n].append(d)
    return found


def support_pairs(X: int) -> list[tuple[int, int]]:
    """Coprime square-free (d1, d2) with Sigma(X, d1^2, d2^2) > 0, sorted.

    d1^2 | n^2+1 and d2^2 | n^2+2 force d1, d2 <= X.  Since n^2+1 and n^2+2
    are coprime, every pair found this way is coprime automatically.
    """
    s1 = _divisor_support(1, X)
    s2 = _divisor_support(2, X)
    found = {(1, 1)}
    for n in set(s1) | set(s2):
        for d1 in [1, *s1.get(n, ())]:
            for d2 in [1, *s2.get(n, ())]:
                found.add((d1, d2))
    return sorted(found)


def gamma_decomposed(plan: DecompositionPlan) -> Decomposition:
    """Gamma(X) = Gamma_1 + Gamma_2 with Gamma_1 over d1 d2 <= z."""
    X = plan.X
    if X > MAX_X:
        raise ValueError(f"X must be <= {MAX_X}")
    g1 = g2 = 0
    support = support_pairs(X)
    for d1, d2 in support:
        term = mobius(d1) * mobius(d2) * sigma_count(X, d1, d2)
        if d1 * d2 <= plan.z:
            g1 += term
        else:
            g2 += term
    return Decomposition(g1, g2, g1 + g2, len(support))


@dataclass
class AsymptoticReport:
    rows: list[PairCensus]
    slope: float | None

    def rel_errors(self) -> list[float]:
        return [r.rel_err for r in self.rows]


def fit_slope(rows: list[PairCensus], min_x: int = 100) -> float | None:
    """Least-squares slope of log|Gamma - sigma X| against log X."""
    pts = [(math.log(r.X), math.log(r.abs_err)) for r in rows if r.X >= min_x and r.abs_err > 0]
    if len(pts) < 2:
        return None
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    return float(np.polyfit(x, y, 1)[0])


def asymptotic_report(xs: list[int], threads: int = 1, sigma: float | None = None) -> AsymptoticReport:
    if list(xs) != sorted(xs):
        raise ValueError("xs must be ascending")
    if xs and xs[-1] > MAX_X:
        raise ValueError(f"X must be <= {MAX_X}")
    if not xs:
        return AsymptoticReport([], None)
    # One sieve over [1, max X] serves every row.
    both = sieve_flags(1, xs[-1], threads=threads).both()
    running = np.cumsum(both)
    rows = [census(X, int(running[X - 1]), sigma) for X in xs]
    return AsymptoticReport(rows, fit_slope(rows))
