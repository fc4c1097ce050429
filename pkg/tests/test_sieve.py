import numpy as np
import pytest

from sqfpairs.sieve import default_prime_bound, is_squarefree, mark_budget, sieve_flags


def test_small_window():
    f = sieve_flags(1, 10)
    assert [n for n in range(1, 11) if not f.flags1[n - 1]] == [7]
    assert [n for n in range(1, 11) if not f.flags2[n - 1]] == [4, 5]
    assert np.count_nonzero(f.both()) == 7


def test_against_oracle():
    f = sieve_flags(1, 5000)
    for n in range(1, 5001):
        assert f.flags1[n - 1] == is_squarefree(n * n + 1)
        assert f.flags2[n - 1] == is_squarefree(n * n + 2)


def test_offset_and_segments_agree():
    whole = sieve_flags(1, 30000)
    part = sieve_flags(12345, 30000, segment=777)
    assert np.array_equal(whole.both()[12344:], part.both())


def test_threads_invariant():
    a = sieve_flags(1, 200000, segment=1 << 14, threads=1)
    b = sieve_flags(1, 200000, segment=1 << 14, threads=4)
    assert np.array_equal(a.flags1, b.flags1) and np.array_equal(a.flags2, b.flags2)


def test_prime_bound_too_small():
    with pytest.raises(ValueError):
        sieve_flags(1, 10**5, prime_bound=100)
    assert default_prime_bound(10**5) ** 3 >= 10**10 + 2


def test_mark_budget_positive():
    assert 0 < mark_budget(1, 10**4, default_prime_bound(10**4))
