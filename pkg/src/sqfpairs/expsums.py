"""Exponential sums: the sawtooth psi, its truncated Fourier series,
incomplete Kloosterman sums, the Theta_m sum computed two ways, and the
psi-sums over roots of n^2 + a.

Phases with rational arguments are reduced mod 1 exactly (as integers or
Fractions) before the single float conversion, so large numerators cost no
precision.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .modmath import mod_inv
from .quadroots import roots_mod
from .representations import select_bijective_subset

TWO_PI = 2 * math.pi


def e(t: float | Fraction) -> complex:
    """exp(2 pi i t), reducing t mod 1 first."""
    return cmath.exp(2j * math.pi * float(t % 1))


def psi(t):
    """Sawtooth {t} - 1/2; exact for Fraction input."""
    if isinstance(t, Fraction):
        return t - math.floor(t) - Fraction(1, 2)
    t = np.asarray(t, dtype=np.float64)
    out = t - np.floor(t) - 0.5
    return float(out) if out.ndim == 0 else out


def psi_truncated(t, M: int, chunk: int = 1 << 22):
    """-sum_{1 <= |m| <= M} e(mt) / (2 pi i m), summed as conjugate pairs.

    The pair m, -m contributes -sin(2 pi m t) / (pi m), so the sum is real.
    """
    if M < 2:
        raise ValueError(f"M must be >= 2, got {M}")
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    frac = t - np.floor(t)
    m = np.arange(1, M + 1, dtype=np.float64)
    out = np.empty_like(frac)
    step = max(1, chunk // M)
    for i in range(0, frac.size, step):
        block = frac[i : i + step, None] * m
        block -= np.floor(block)
        out[i : i + step] = -(np.sin(TWO_PI * block) / m).sum(axis=1) / math.pi
    return float(out[0]) if out.size == 1 else out


def psi_truncation_error(M: int, samples: int = 10_000, seed: int = 0) -> float:
    """Mean |psi(t) - psi_truncated(t, M)| over uniform t in [0, 1)."""
    t = np.random.default_rng(seed).random(samples)
    return float(np.mean(np.abs(psi(t) - psi_truncated(t, M))))


def reciprocity_check(A: int, B: int) -> bool:
    """inv(A)_{|B|}/B + inv(B)_{|A|}/A - 1/(AB) is an integer."""
    if A == 0 or B == 0:
        raise ValueError("A and B must be nonzero")
    if math.gcd(A, B) != 1:
        raise ValueError(f"gcd({A}, {B}) != 1")
    s = Fraction(mod_inv(A, abs(B)), B) + Fraction(mod_inv(B, abs(A)), A) - Fraction(1, A * B)
    return s.denominator == 1


@dataclass(frozen=True)
class KloostermanSpec:
    r: int
    h: int
    alpha: float
    beta: float

    def __post_init__(self):
        if self.r == 0 or self.h == 0:
            raise ValueError("r and h must be nonzero")
        if not 0 < self.beta - self.alpha <= 2 * abs(self.r):
            raise ValueError(f"need 0 < beta - alpha <= 2|r|, got [{self.alpha}, {self.beta}]")


def inverse_table(r: int) -> np.ndarray:
    """inv[x] = inverse of x modulo r for 0 <= x < r, or -1 when gcd(x, r) > 1.

    Vectorized extended Euclid over all residues at once.
    """
    x = np.arange(r, dtype=np.int64)
    a, b = x.copy(), np.full(r, r, dtype=np.int64)
    s0, s1 = np.ones(r, dtype=np.int64), np.zeros(r, dtype=np.int64)
    # invariant: a = s0 * x (mod r), b = s1 * x (mod r)
    while np.any(b != 0):
        live = b != 0
        q = np.zeros_like(a)
        q[live] = a[live] // b[live]
        a, b = np.where(live, b, a), np.where(live, a - q * b, b)
        s0, s1 = np.where(live, s1, s0), np.where(live, s0 - q * s1, s1)
    inv = np.where(a == 1, s0 % r, -1)
    if r == 1:
        inv[:] = 0
    return inv


def _kloosterman_range(r: int, h: int, lo: float, hi: float) -> complex:
    """sum over integers lo <= x <= hi, gcd(x, r) = 1, of e(h inv(x)_{|r|} / r)."""
    R = abs(r)
    start, stop = math.ceil(lo), math.floor(hi)
    if stop < start:
        return 0j
    inv = inverse_table(R)
    xs = np.arange(start, stop + 1, dtype=np.int64)
    iv = inv[xs % R]
    iv = iv[iv >= 0]
    k = (h % R) * iv % R
    if r < 0:
        k = (-k) % R
    return complex(np.exp(2j * np.pi * (k / R)).sum())


def kloosterman_incomplete(spec: KloostermanSpec) -> complex:
    return _kloosterman_range(spec.r, spec.h, spec.alpha, spec.beta)


def kloosterman_direct(r: int, h: int, alpha: float, beta: float) -> complex:
    """Term-by-term reference with pow() inverses."""
    R = abs(r)
    total = 0j
    for x in range(math.ceil(alpha), math.floor(beta) + 1):
        if math.gcd(x, R) == 1:
            total += e(Fraction(h * mod_inv(x, R), r))
    return total


@dataclass
class WeilStudy:
    rows: list[tuple[int, int, float, float, float, float]]
    max_ratio: float

    def worst(self):
        return max(self.rows, key=lambda row: row[-1])


def weil_ratio(r: int, h: int, value: complex, exponent: float = 0.6) -> float:
    return abs(value) / (abs(r) ** exponent * math.gcd(r, h) ** 0.5)


def weil_ratio_study(rmax: int, samples: int, seed: int = 0) -> WeilStudy:
    """Sample incomplete sums and record |K| / (|r|^0.6 gcd(r, h)^0.5).

    r is uniform on [2, rmax] with a random sign, h uniform on nonzero
    [-2 rmax, 2 rmax], alpha uniform on [-|r|, |r|] and the length uniform on
    (0, 2|r|].  Rows are (r, h, alpha, beta, |K|, ratio).
    """
    if rmax < 2:
        raise ValueError("rmax must be >= 2")
    rng = np.random.default_rng(seed)
    rows = []
    for _ in range(samples):
        r = int(rng.integers(2, rmax + 1)) * (1 if rng.random() < 0.5 else -1)
        h = 0
        while h == 0:
            h = int(rng.integers(-2 * rmax, 2 * rmax + 1))
        R = abs(r)
        alpha = float(rng.uniform(-R, R))
        beta = alpha + float(2 * R * (1.0 - rng.random()))
        k = _kloosterman_range(r, h, alpha, beta)
        rows.append((r, h, alpha, beta, abs(k), weil_ratio(r, h, k)))
    return WeilStudy(rows, max(row[-1] for row in rows) if rows else 0.0)


def eta_bounds(v: int, D2: float) -> tuple[float, float | None]:
    """(eta1, eta2); eta2 is None when 2 D2 - 2v^2 < 0 and the u-range is empty."""
    eta1 = math.sqrt(max(0.0, D2 - 2 * v * v))
    inner = min(v * v, 2 * D2 - 2 * v * v)
    return eta1, (math.sqrt(inner) if inner >= 0 else None)


def k_vm(v: int, m: int, t: float, D2: float) -> complex:
    """sum over eta1(v) <= u <= t, gcd(u, v) = 1, of e(m inv(u)_{|v|} / v)."""
    if v == 0:
        raise ValueError("v must be nonzero")
    eta1, eta2 = eta_bounds(v, D2)
    if eta2 is None or not eta1 <= t <= eta2:
        raise ValueError(f"t={t} outside [eta1, eta2] = [{eta1}, {eta2}]")
    return _kloosterman_range(v, m, eta1, t)


@dataclass(frozen=True)
class ThetaSpec:
    D2: float
    m: int
    X: float

    def __post_init__(self):
        if self.D2 < 0.5:
            raise ValueError(f"D2 must be >= 1/2, got {self.D2}")
        if self.m == 0:
            raise ValueError("m must be nonzero")
        if self.X <= 0:
            raise ValueError("X must be positive")

    def moduli(self) -> range:
        return range(math.ceil(self.D2), math.ceil(2 * self.D2))


def sqrt_split(X: float) -> tuple[int, float]:
    """(integer part, fractional part) of sqrt(X), exact for integer X."""
    if float(X).is_integer():
        s = math.isqrt(int(X))
        frac = math.sqrt(X) - s if s * s != int(X) else 0.0
        return s, frac
    r = math.sqrt(X)
    return math.floor(r), r - math.floor(r)


def sqrt_phase(m: int, X: float, d: int) -> float:
    """m sqrt(X) / d mod 1, with the integer part of sqrt(X) reduced exactly."""
    s, frac = sqrt_split(X)
    return ((m * s) % d / d + m * frac / d) % 1.0


def _theta_term_direct(m: int, X: float, d: int) -> complex:
    inner = sum(e(Fraction(-n * m % d, d)) for n in roots_mod(2, d))
    return e(sqrt_phase(m, X, d)) * inner


def theta_direct(spec: ThetaSpec) -> complex:
    """sum_{D2 <= d < 2 D2} e(m sqrt(X)/d) sum_{n in N2(d)} e(-nm/d)."""
    return sum((_theta_term_direct(spec.m, spec.X, d) for d in spec.moduli()), 0j)


def rep_phase(u: int, v: int, m: int) -> Fraction:
    """-m n/d mod 1 for the root n paired with (u, v), d = u^2 + 2v^2.

    For u < |v| this is -mu/(vd) + m inv(u)_{|v|}/v; for |v| < u it is
    2mv/(ud) - m inv(v)_u/u.  Both follow from the reciprocity law.
    """
    d = u * u + 2 * v * v
    if u < abs(v):
        ph = Fraction(-m * u, v * d) + Fraction(m * mod_inv(u, abs(v)), v)
    elif abs(v) < u:
        ph = Fraction(2 * m * v, u * d) - Fraction(m * mod_inv(v, u), u)
    else:
        raise ValueError(f"u = |v| = {u} has no reciprocity split")
    return ph % 1


def theta_via_reps(spec: ThetaSpec) -> complex:
    """Theta_m as Theta'_m + Theta''_m over the bijective representation sets.

    d = 1, 2 have roots but no representations and d = 3 only has u = |v| = 1;
    these moduli are added as literal terms.
    """
    total = 0j
    for d in spec.moduli():
        if d <= 3:
            total += _theta_term_direct(spec.m, spec.X, d)
            continue
        inner = sum(
            (e(rep_phase(rep.x, rep.y, spec.m)) for rep in select_bijective_subset(d)), 0j
        )
        total += e(sqrt_phase(spec.m, spec.X, d)) * inner
    return total


@dataclass(frozen=True)
class PrehodResult:
    d1: int
    X: int
    lhs: Fraction
    rhs: Fraction
    correction: Fraction

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    @property
    def corrected_equal(self) -> bool:
        """lhs - rhs equals the discrepancy predicted by ``prehod_correction``."""
        return self.lhs - self.rhs == self.correction

    def as_dict(self) -> dict:
        return {
            "d1": self.d1,
            "X": self.X,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "abs_diff": str(abs(self.lhs - self.rhs)),
            "pass": self.equal,
            "correction": str(self.correction),
            "corrected_pass": self.corrected_equal,
        }


def prehod_check(d1: int, X: int) -> PrehodResult:
    """Both sides of the passage from modulus d1^2 to modulus d1, in exact arithmetic.

    lhs = sum_{n in N1'(d1)} psi((X - n)/d1^2)
    rhs = sum_{n in N1(d1)} (X/d1^2 - sqrt(X)/d1) + psi((sqrt(X) - n)/d1)

    X must be a perfect square so that both sides are rational.
    """
    s = math.isqrt(X)
    if s * s != X:
        raise ValueError(f"X={X} is not a perfect square; use prehod_check_float")
    if d1 <= s:
        raise ValueError(f"need d1 > sqrt(X), got d1={d1}, sqrt(X)={s}")
    q = d1 * d1
    big = roots_mod(1, q).roots
    small = roots_mod(1, d1).roots
    lhs = sum((psi(Fraction(X - n, q)) for n in big), Fraction(0))
    rhs = sum(
        (Fraction(X, q) - Fraction(s, d1) + psi(Fraction(s - n, d1)) for n in small), Fraction(0)
    )
    return PrehodResult(d1, X, lhs, rhs, prehod_correction(d1, X))


def prehod_correction(d1: int, X: int) -> Fraction:
    """Exact value of lhs - rhs in ``prehod_check``.

    With k' = #N1'(d1), k = #N1(d1) and d1 > 2, pairing n with d - n gives
    lhs = k'(X/d1^2 - 1) + #{n' > X} and rhs = k(X/d1^2 - 1) + #{n > sqrt X},
    since psi(t) = t - 1/2 + 1 for -1 < t < 0.  The two sides agree only when
    k = k' and the counts of roots beyond X and sqrt(X) match.
    """
    s = math.isqrt(X)
    q = d1 * d1
    big = roots_mod(1, q).roots
    small = roots_mod(1, d1).roots
    scale = Fraction(X, q) - 1
    return (len(big) - len(small)) * scale + sum(n > X for n in big) - sum(n > s for n in small)


def prehod_check_float(d1: int, X: float) -> tuple[float, float]:
    """Float version for non-square X."""
    r = math.sqrt(X)
    if d1 <= r:
        raise ValueError(f"need d1 > sqrt(X), got d1={d1}")
    q = d1 * d1
    lhs = sum(psi((X - n) / q) for n in roots_mod(1, q))
    rhs = sum(X / q - r / d1 + psi((r - n) / d1) for n in roots_mod(1, d1))
    return lhs, rhs


def psi_sum_over_roots(a: int, D: float, X: float) -> float:
    """sum_{D <= d < 2D} sum_{n in N_a(d)} psi((sqrt(X) - n)/d)."""
    if D < 0.5:
        raise ValueError(f"D must be >= 1/2, got {D}")
    s, frac = sqrt_split(X)
    total = []
    for d in range(math.ceil(D), math.ceil(2 * D)):
        for n in roots_mod(a, d):
            # exact integer part first, then the fractional remainder
            total.append(psi(((s - n) % d + frac) / d))
    return math.fsum(total)


def psi_sum_study(a: int, X: float, Ds: list[float]) -> list[tuple[float, float, float]]:
    """(D, value, |value| D^(1/4) / X) for each D."""
    rows = []
    for D in Ds:
        v = psi_sum_over_roots(a, D, X)
        rows.append((D, v, abs(v) * D**0.25 / X))
    return rows
