"""Coprime representations n = x^2 + 2y^2 and the roots of z^2 + 2 = 0 (mod n).

``beta`` sends (x, y) to the root z with z*y = x (mod n).  For n >= 5 every
root is hit: ``construct_preimage`` finds a/q close to z/n with q <= sqrt(n),
puts r = zq - an, and reads a representation off r^2 + 2q^2, which is
either n or 2n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .modmath import mod_inv
from .quadroots import roots_mod


class PreimageError(AssertionError):
    """Raised when the case analysis meets a value it proves impossible."""


@dataclass(frozen=True, order=True)
class Representation:
    x: int
    y: int
    n: int

    def __post_init__(self):
        if self.x < 1 or self.y == 0:
            raise ValueError(f"need x >= 1 and y != 0, got ({self.x}, {self.y})")
        if self.x * self.x + 2 * self.y * self.y != self.n:
            raise ValueError(f"{self.x}^2 + 2*{self.y}^2 != {self.n}")
        if math.gcd(self.x, self.y) != 1:
            raise ValueError(f"({self.x}, {self.y}) not coprime")

    def sort_key(self) -> tuple[int, int, int]:
        return (self.x, abs(self.y), 1 if self.y > 0 else -1)


@dataclass(frozen=True)
class ApproxPair:
    a: int
    q: int
    z: int
    n: int


@dataclass(frozen=True)
class PreimageTrace:
    z: int
    n: int
    a: int
    q: int
    r: int
    case: int
    x: int
    y: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def representations(n: int) -> list[Representation]:
    """All (x, y), x >= 1, y != 0, gcd(x, y) = 1 with x^2 + 2y^2 = n."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    out = []
    for ay in range(1, math.isqrt(n // 2) + 1):
        rest = n - 2 * ay * ay
        x = math.isqrt(rest)
        if x >= 1 and x * x == rest and math.gcd(x, ay) == 1:
            out.append(Representation(x, -ay, n))
            out.append(Representation(x, ay, n))
    return sorted(out, key=Representation.sort_key)


def beta(rep: Representation) -> int:
    """The root z in [1, n] with z*y = x (mod n)."""
    n = rep.n
    if math.gcd(rep.y, n) != 1:
        raise ValueError(f"gcd(y, n) != 1 for {rep}")
    z = rep.x * mod_inv(rep.y, n) % n
    return z or n


def convergents(num: int, den: int):
    """Yield the continued-fraction convergents (p, q) of num/den."""
    p0, q0, p1, q1 = 0, 1, 1, 0
    while den:
        t, (num, den) = num // den, (den, num % den)
        p0, q0, p1, q1 = p1, q1, t * p1 + p0, t * q1 + q0
        yield p1, q1


def dirichlet_approx(z: int, n: int) -> ApproxPair:
    """Last convergent a/q of z/n with q <= sqrt(n).

    Consecutive convergents satisfy |z/n - a/q| < 1/(q q'), and the next
    denominator q' exceeds sqrt(n) (or a/q = z/n exactly), which gives the
    bound 1/(q sqrt(n)).
    """
    if n < 5:
        raise ValueError(f"n must be >= 5, got {n}")
    best = None
    for a, q in convergents(z, n):
        if q * q > n:
            break
        best = (a, q)
    a, q = best
    return ApproxPair(a, q, z, n)


def check_approx(ap: ApproxPair) -> bool:
    """|z/n - a/q| < 1/(q sqrt n), 1 <= q <= sqrt n, gcd(a, q) = 1, exactly."""
    if math.gcd(ap.a, ap.q) != 1 or ap.q < 1 or ap.q * ap.q > ap.n:
        return False
    diff = abs(Fraction(ap.z, ap.n) - Fraction(ap.a, ap.q))
    # diff < 1/(q sqrt n)  <=>  diff^2 q^2 n < 1
    return diff * diff * ap.q * ap.q * ap.n < 1


def trace_preimage(z: int, n: int) -> PreimageTrace:
    """Run the two-case construction for the root z modulo n, keeping every step."""
    if n < 5:
        raise ValueError(f"the construction needs n >= 5, got {n}")
    if (z * z + 2) % n:
        raise ValueError(f"{z} is not a root of z^2+2 modulo {n}")
    ap = dirichlet_approx(z, n)
    a, q = ap.a, ap.q
    r = z * q - a * n
    s = r * r + 2 * q * q
    if not 0 < s < 3 * n:
        raise PreimageError(f"r^2+2q^2={s} outside (0, 3n) for z={z}, n={n}")
    if r == 0:
        raise PreimageError(f"r = 0 for z={z}, n={n}")
    if s == n:
        case = 1
        if math.gcd(r, q) != 1:
            raise PreimageError(f"gcd(r, q) != 1 in case 1 for z={z}, n={n}")
        x, y = (r, q) if r > 0 else (-r, -q)
    elif s == 2 * n:
        case = 2
        if r % 2:
            raise PreimageError(f"odd r in case 2 for z={z}, n={n}")
        r0 = r // 2
        if math.gcd(r0, q) != 1:
            raise PreimageError(f"gcd(r0, q) != 1 in case 2 for z={z}, n={n}")
        if n % 2 == 0:
            # n = 2 n0 with n0 odd; q and z even make zy - x even.
            if n % 4 == 0 or q % 2 or z % 2:
                raise PreimageError(f"parity argument fails for z={z}, n={n}")
        x, y = q, -r0
    else:
        raise PreimageError(f"r^2+2q^2={s} is neither n nor 2n for z={z}, n={n}")
    return PreimageTrace(z, n, a, q, r, case, x, y)


def construct_preimage(z: int, n: int) -> Representation:
    t = trace_preimage(z, n)
    rep = Representation(t.x, t.y, n)
    if beta(rep) != (z % n or n):
        raise PreimageError(f"beta{(t.x, t.y)} != {z} modulo {n}")
    return rep


@dataclass
class SurjectivityReport:
    nmax: int
    roots_checked: int = 0
    case2: int = 0
    failures: list[tuple[int, int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_surjectivity(nmax: int, nmin: int = 5) -> SurjectivityReport:
    """Round trip every root for n in [nmin, nmax] and check beta covers each root set."""
    if nmax < 5:
        raise ValueError("nmax must be >= 5")
    report = SurjectivityReport(nmax)
    for n in range(max(5, nmin), nmax + 1):
        roots = roots_mod(2, n).roots
        for z in roots:
            report.roots_checked += 1
            try:
                t = trace_preimage(z, n)
                if beta(Representation(t.x, t.y, n)) != z:
                    report.failures.append((n, z, "round trip"))
                report.case2 += t.case == 2
            except (PreimageError, ValueError) as exc:
                report.failures.append((n, z, str(exc)))
        image = {beta(rep) for rep in representations(n)}
        if image != set(roots):
            report.failures.append((n, 0, f"image {sorted(image)} != roots {list(roots)}"))
    return report


def select_bijective_subset(n: int) -> list[Representation]:
    """One representation per root: the smallest by (x, |y|, sign y)."""
    chosen: dict[int, Representation] = {}
    for rep in representations(n):
        chosen.setdefault(beta(rep), rep)
    return [chosen[z] for z in sorted(chosen)]
