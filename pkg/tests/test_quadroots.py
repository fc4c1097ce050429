import math

import pytest
from hypothesis import given, strategies as st

from sqfpairs.modmath import omega
from sqfpairs.quadroots import (
    brute_lambda,
    brute_roots,
    lam,
    prime_power_roots,
    root_count_law,
    roots_mod,
    squarefree_support,
    verify_multiplicativity,
)


def test_roots_examples():
    assert roots_mod(1, 5).roots == (2, 3)
    assert roots_mod(1, 25).roots == (7, 18)
    assert roots_mod(2, 3).roots == (1, 2)
    assert roots_mod(2, 11).roots == (3, 8)
    assert roots_mod(1, 3).roots == ()
    assert roots_mod(1, 1).roots == (1,)


def test_roots_mod_two():
    assert roots_mod(1, 2).roots == (1,)
    assert roots_mod(2, 2).roots == (2,)
    assert roots_mod(1, 4).roots == () and roots_mod(2, 4).roots == ()
    assert prime_power_roots(1, 2, 3) == []


@given(st.sampled_from([1, 2]), st.integers(1, 3000))
def test_roots_match_brute(a, q):
    assert list(roots_mod(a, q).roots) == brute_roots(a, q)


def test_roots_rejects_bad_a():
    with pytest.raises(ValueError):
        roots_mod(3, 7)


def test_lambda_examples():
    assert lam(5, 3).value == 4
    assert lam(25, 9).value == 4
    assert lam(1, 1).value == 1
    assert lam(3, 1).value == 0


@given(st.integers(1, 60), st.integers(1, 60))
def test_lambda_matches_brute(q1, q2):
    assert lam(q1, q2).value == brute_lambda(q1, q2)


def test_multiplicativity_small():
    assert verify_multiplicativity(60) == []


def test_root_law_domain():
    law = root_count_law(500)
    assert law.ok and 5 in law.checked and 65 in law.checked
    assert 2 not in law.checked  # one root mod 2, not 2^omega(2)


def test_squarefree_support():
    assert squarefree_support(1, 30) == [1, 5, 13, 17, 29]
    assert squarefree_support(2, 20) == [1, 3, 11, 17, 19]
    for d in squarefree_support(1, 400):
        assert len(roots_mod(1, d * d)) == 2 ** omega(d)
