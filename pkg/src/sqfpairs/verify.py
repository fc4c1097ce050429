"""Invariant suite behind ``sqfpairs verify-all``.

Each check returns a ``Check`` with a one-line detail.  The smoke scale
finishes in seconds; desk scale runs the full acceptance sizes.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import census, expsums, quadroots, representations, sieve, singular

SCALES = ("smoke", "desk")


@dataclass
class Check:
    name: str
    ok: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}: {self.detail} ({self.seconds:.2f}s)"


def _census_small(scale):
    got = {X: census.gamma_count(X) for X in (1, 4, 10)}
    flags = sieve.sieve_flags(1, 10).both()
    misses = [n for n in range(1, 11) if not flags[n - 1]]
    ok = got == {1: 1, 4: 3, 10: 7} and misses == [4, 5, 7]
    return ok, f"Gamma(1,4,10)={got[1]},{got[4]},{got[10]}; failures at {misses}"


def _decomposition(scale):
    xs = (100, 1000) if scale == "smoke" else (100, 1000, 10**4)
    bad = []
    for X in xs:
        direct = census.gamma_count(X)
        for z in decomposition_thresholds(X):
            d = census.gamma_decomposed(census.DecompositionPlan(X, z))
            if d.total != direct:
                bad.append((X, z, d.total, direct))
    return not bad, f"X in {xs}, 5 thresholds each; mismatches={bad}"


def decomposition_thresholds(X: int) -> list[float]:
    """Five z in [sqrt X, X): the endpoints, X^(8/9), and two interior points."""
    lo = math.sqrt(X)
    return [lo, X ** (8 / 9), (lo + X) / 2, X ** 0.75, X - 1]


def _sigma_two_methods(scale):
    P, D = (10**4, 10**3) if scale == "smoke" else (10**6, 10**4)
    prod = singular.sigma_product(P)
    summ = singular.sigma_sum(D)
    gap = abs(prod.value - summ.value)
    allowed = prod.tail_bound + summ.tail_bound
    ok = gap <= allowed and 0.6 < prod.value < 0.8 and 0.6 < summ.value < 0.8
    return ok, (
        f"two-method sigma: product(P={P})={prod.value:.12f}, sum(D={D})={summ.value:.12f}, "
        f"|diff|={gap:.3e} <= tails {allowed:.3e}"
    )


def _asymptotic(scale):
    xs = [10**3, 10**4, 10**5] if scale == "smoke" else [10**3, 10**4, 10**5, 10**6]
    rep = census.asymptotic_report(xs)
    rel = rep.rel_errors()
    decreasing = all(b < a for a, b in zip(rel, rel[1:]))
    slope_ok = rep.slope is not None and rep.slope <= 1.0
    last_ok = xs[-1] < 10**6 or rel[-1] <= 0.01
    ok = decreasing and slope_ok and last_ok
    return ok, f"rel_err={['%.3e' % r for r in rel]}, slope={rep.slope:.3f}"


def _surjectivity(scale):
    nmax = 2000 if scale == "smoke" else 10**4
    rep = representations.verify_surjectivity(nmax)
    ok = rep.ok and rep.case2 > 0
    return ok, f"n<={nmax}: {rep.roots_checked} roots, case2={rep.case2}, failures={rep.failures[:3]}"


def _reciprocity(scale):
    bound = 100 if scale == "smoke" else 300
    fails = reciprocity_failures(bound)
    return not fails, f"|A|,|B|<={bound}: failures={fails[:3]}"


def reciprocity_failures(bound: int) -> list[tuple[int, int]]:
    bad = []
    for A in range(1, bound + 1):
        for B in range(1, bound + 1):
            if math.gcd(A, B) != 1:
                continue
            for sa in (1, -1):
                for sb in (1, -1):
                    if not expsums.reciprocity_check(sa * A, sb * B):
                        bad.append((sa * A, sb * B))
    return bad


def theta_specs(count: int, seed: int = 0) -> list[expsums.ThetaSpec]:
    """Seeded specs with D2 <= 200, |m| <= 20, X <= 10**4."""
    rng = np.random.default_rng(seed)
    specs = []
    for _ in range(count):
        D2 = float(rng.uniform(0.5, 200.0))
        m = 0
        while m == 0:
            m = int(rng.integers(-20, 21))
        X = int(rng.integers(1, 10**4 + 1))
        specs.append(expsums.ThetaSpec(D2, m, X))
    return specs


def _theta(scale):
    n = 10 if scale == "smoke" else 50
    worst = max(
        abs(expsums.theta_direct(s) - expsums.theta_via_reps(s)) for s in theta_specs(n)
    )
    return worst <= 1e-9, f"{n} specs: max |direct - via reps| = {worst:.2e}"


def prehod_moduli(X: int) -> list[int]:
    """Square-free d1 in (sqrt X, 3 sqrt X] with N1(d1) nonempty."""
    s = math.isqrt(X)
    from .modmath import is_squarefree

    return [d for d in range(s + 1, 3 * s + 1) if is_squarefree(d) and quadroots.roots_mod(1, d).roots]


def _prehod(scale):
    named = [expsums.prehod_check(13, 100), expsums.prehod_check(17, 100)]
    named_ok = (
        all(r.equal for r in named)
        and named[0].lhs == Fraction(-138, 169)
        and named[1].lhs == Fraction(-89, 289)
    )
    xs = (100, 400) if scale == "smoke" else (100, 400, 10**4)
    results = [expsums.prehod_check(d, X) for X in xs for d in prehod_moduli(X)]
    literal_misses = sum(not r.equal for r in results)
    corrected_ok = all(r.corrected_equal for r in results)
    return named_ok and corrected_ok, (
        f"d1=13,17 exact; corrected identity on {len(results)} moduli; "
        f"uncorrected identity differs on {literal_misses}"
    )


def _weil(scale):
    rmax, samples = (500, 1000) if scale == "smoke" else (5000, 10**4)
    study = expsums.weil_ratio_study(rmax, samples, seed=0)
    full = ramanujan_max_error(100 if scale == "smoke" else 500)
    ok = study.max_ratio <= 10 and full <= 1e-9
    return ok, f"max ratio {study.max_ratio:.3f} over {samples}; full-period max |K - mu(r)| = {full:.1e}"


def ramanujan_max_error(rmax: int) -> float:
    """Largest |K(r, h) - mu(r)| over full periods, square-free r <= rmax, gcd(h, r) = 1."""
    from .modmath import is_squarefree, mobius

    worst = 0.0
    for r in range(1, rmax + 1):
        if not is_squarefree(r):
            continue
        for h in {1, 2, r - 1, r + 1, 7 * r + 3}:
            if h == 0 or math.gcd(h, r) != 1:
                continue
            k = expsums.kloosterman_incomplete(expsums.KloostermanSpec(r, h, 0.5, r + 0.5))
            worst = max(worst, abs(k - mobius(r)))
    return worst


def _root_law(scale):
    dmax, nmax = (1000, 10**4) if scale == "smoke" else (10**4, 10**5)
    law = quadroots.root_count_law(dmax)
    mism = sieve_oracle_mismatches(nmax)
    ok = law.ok and not mism
    return ok, f"{len(law.checked)} moduli <= {dmax}; sieve vs factorization n<={nmax}: mismatches={mism[:3]}"


def sieve_oracle_mismatches(nmax: int) -> list[int]:
    f = sieve.sieve_flags(1, nmax)
    return [
        n
        for n in range(1, nmax + 1)
        if sieve.is_squarefree(n * n + 1) != f.flags1[n - 1]
        or sieve.is_squarefree(n * n + 2) != f.flags2[n - 1]
    ]


def _multiplicativity(scale):
    bound = 100 if scale == "smoke" else 200
    bad = quadroots.verify_multiplicativity(bound)
    return not bad, f"tuples with product <= {bound}: violations={bad[:3]}"


def _psi_truncation(scale):
    Ms = [2**k for k in range(5, 13)]
    errs = [expsums.psi_truncation_error(M, 10**4 if scale == "desk" else 2000) for M in Ms]
    at1000 = expsums.psi_truncation_error(1000, 10**4)
    ok = all(b < a for a, b in zip(errs, errs[1:])) and at1000 <= 5 * math.log(1000) / 1000
    return ok, f"mean error at M=1000: {at1000:.2e}; doubling M strictly improves: {ok}"


CHECKS = [
    ("census-small", _census_small),
    ("decomposition", _decomposition),
    ("sigma-two-method", _sigma_two_methods),
    ("asymptotic", _asymptotic),
    ("surjectivity", _surjectivity),
    ("reciprocity", _reciprocity),
    ("theta-transform", _theta),
    ("prehod", _prehod),
    ("weil", _weil),
    ("root-law-and-sieve", _root_law),
    ("multiplicativity", _multiplicativity),
    ("psi-truncation", _psi_truncation),
]


def run_all(scale: str = "smoke") -> list[Check]:
    if scale not in SCALES:
        raise ValueError(f"scale must be one of {SCALES}")
    out = []
    for name, fn in CHECKS:
        t = time.perf_counter()
        try:
            ok, detail = fn(scale)
        except Exception as exc:  # a crashing check is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(Check(name, bool(ok), detail, time.perf_counter() - t))
    return out
