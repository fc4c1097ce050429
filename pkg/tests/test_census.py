import pytest

from sqfpairs import census
from sqfpairs.modmath import is_squarefree


def brute_gamma(X):
    return sum(is_squarefree(n * n + 1) and is_squarefree(n * n + 2) for n in range(1, X + 1))


def test_small_values():
    assert [census.gamma_count(X) for X in (1, 4, 10)] == [1, 3, 7]
    for X in (50, 333, 1000):
        assert census.gamma_count(X) == brute_gamma(X)


def test_sigma_count():
    assert census.sigma_count(100, 5, 1) == 8
    assert census.sigma_count(10, 1, 3) == 2
    with pytest.raises(ValueError):
        census.sigma_count(100, 3, 3)


def test_count_in_progression():
    assert census.count_in_progression(10, 3, 1) == 4
    assert census.count_in_progression(2, 5, 3) == 0


@pytest.mark.parametrize("X", [100, 1000, 5000])
def test_decomposition_matches(X):
    d = census.gamma_decomposed(census.DecompositionPlan.default(X))
    assert d.total == census.gamma_count(X)


def test_plan_validation():
    with pytest.raises(ValueError):
        census.DecompositionPlan(100, 5)
    with pytest.raises(ValueError):
        census.DecompositionPlan(100, 100)


def test_report():
    rep = census.asymptotic_report([10**3, 10**4])
    assert [r.gamma for r in rep.rows] == [670, 6721]
    assert rep.rows[0].rel_err == pytest.approx(abs(670 - 1000 * rep.rows[0].sigma_x / 1000) / 1000)
    with pytest.raises(ValueError):
        census.asymptotic_report([10**4, 10**3])
