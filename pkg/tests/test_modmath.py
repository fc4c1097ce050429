import math

import pytest
from hypothesis import given, strategies as st

from sqfpairs.modmath import (
    ResidueClass,
    crt,
    factorize,
    hensel_lift,
    icbrt,
    is_prime,
    is_square,
    is_squarefree,
    legendre,
    mobius,
    mod_inv,
    omega,
    small_primes,
    sqrt_mod_p,
    tau,
)


def test_small_primes():
    assert small_primes(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert small_primes(1) == []


@pytest.mark.parametrize("n,expected", [(1, 1), (2, -1), (4, 0), (6, 1), (30, -1), (12, 0)])
def test_mobius(n, expected):
    assert mobius(n) == expected


def test_omega_tau():
    assert omega(1) == 0 and omega(60) == 3
    assert tau(1) == 1 and tau(12) == 6 and tau(36) == 9


def test_is_prime_known():
    assert [n for n in range(50) if is_prime(n)] == small_primes(49)
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7
    assert is_prime(2**89 - 1)


def test_factorize_large_semiprime():
    p, q = 1_000_000_007, 998_244_353
    assert factorize(p * q).factors == ((q, 1), (p, 1))


def test_factorize_rejects():
    with pytest.raises(ValueError):
        factorize(0)


@given(st.integers(1, 10**12))
def test_factorize_roundtrip(n):
    f = factorize(n)
    assert math.prod(p**e for p, e in f.factors) == n
    assert all(is_prime(p) for p, _ in f.factors)


def test_legendre():
    assert legendre(2, 7) == 1 and legendre(3, 7) == -1 and legendre(14, 7) == 0
    assert legendre(-1, 13) == 1 and legendre(-1, 11) == -1
    with pytest.raises(ValueError):
        legendre(1, 2)
    with pytest.raises(ValueError):
        legendre(1, 9)


def test_mod_inv():
    assert mod_inv(3, 7) == 5
    assert mod_inv(5, 1) == 0
    with pytest.raises(ValueError):
        mod_inv(4, 8)


@given(st.sampled_from(small_primes(2000)[1:]), st.integers(0, 10**6))
def test_sqrt_mod_p(p, a):
    roots = sqrt_mod_p(a, p)
    assert roots == sorted(roots)
    assert all((r * r - a) % p == 0 for r in roots)
    expected = 1 if a % p == 0 else 1 + legendre(a, p)
    assert len(roots) == expected


def test_hensel_lift():
    # 5^2 + 1 = 0 mod 13 lifts to a root mod 169
    r = hensel_lift(5, 1, 13, 1)
    assert (r * r + 1) % 169 == 0 and r % 13 == 5


def test_crt():
    c = crt(ResidueClass(2, 3), ResidueClass(3, 5))
    assert c == ResidueClass(8, 15)


@given(st.integers(0, 10**18))
def test_is_square_icbrt(n):
    ok, s = is_square(n)
    assert ok == (math.isqrt(n) ** 2 == n)
    b = icbrt(n)
    assert b**3 >= n and (b == 0 or (b - 1) ** 3 < n)


def test_is_squarefree():
    assert [n for n in range(1, 13) if not is_squarefree(n)] == [4, 8, 9, 12]
