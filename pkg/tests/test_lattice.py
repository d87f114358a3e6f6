import math

import pytest

from zetameans.errors import DomainError
from zetameans.lattice import (
    count_A_estimate,
    count_frac_above,
    count_frac_above_estimate,
    count_frac_below,
    enumerate_A,
    enumerate_A_integer,
    hyperbola_asymptotic,
    hyperbola_deviation,
    hyperbola_double_sum,
    naive_double_sum,
    saffari_density,
    saffari_partial_sum,
)


# ─── enumeration ────────────────────────────────────────────────────────────

def test_enumerate_small_integer_length():
    found = enumerate_A(20 * math.pi, 0.25)
    assert found.members == [1, 2, 5, 9, 10]
    assert len(found) == 5
    assert 9 in found
    assert 3 not in found
    assert found.to_dict()["count"] == 5


def test_tiny_eta_leaves_divisors():
    assert enumerate_A_integer(12, 0.01).members == [1, 2, 3, 4, 6, 12]


def test_non_integer_length_matches_brute_force():
    t = 100.0
    length = t / (2 * math.pi)
    expected = []
    for x in range(1, int(length) + 1):
        y = length / x
        if abs(y - round(y)) < 0.2:
            expected.append(x)
    assert enumerate_A(t, 0.2).members == expected


@pytest.mark.parametrize("t, eta", [(100.0, 0.5), (100.0, 0.0), (5.0, 0.25)])
def test_enumerate_domain(t, eta):
    with pytest.raises(DomainError):
        enumerate_A(t, eta)


# ─── fractional-part counts ─────────────────────────────────────────────────

def test_counts_small():
    assert count_frac_below(10, 0.25) == 5
    assert count_frac_above(10, 0.25) == 0
    with pytest.raises(DomainError):
        count_frac_below(10, 1.0)


def test_A_splits_into_below_and_above():
    n, eta = 1000, 0.2
    assert len(enumerate_A_integer(n, eta)) == count_frac_below(n, eta) + count_frac_above(n, eta)


def test_counts_monotone_in_delta():
    counts = [count_frac_below(500, d) for d in (0.1, 0.2, 0.3, 0.4)]
    assert counts == sorted(counts)


# ─── densities ──────────────────────────────────────────────────────────────

def test_density_closed_values():
    assert saffari_density(0.5) == pytest.approx(2 - 2 * math.log(2), abs=1e-14)
    assert saffari_density(0.999999) == pytest.approx(1.0, abs=1e-5)


@pytest.mark.parametrize("delta", [0.1, 0.5, 0.9])
def test_partial_sum_tail(delta):
    M = 1000
    gap = saffari_density(delta) - saffari_partial_sum(delta, M)
    assert 0 <= gap <= delta / M


@pytest.mark.parametrize("delta", [0.1, 0.25, 0.4])
def test_density_matches_count(delta):
    n = 10 ** 5
    measured = count_frac_below(n, delta) / n
    assert abs(measured - saffari_density(delta)) <= 5 * n ** (-2 / 3) * math.log(n)


def test_above_estimate_matches_count():
    n, delta = 10 ** 4, 0.3
    assert abs(count_frac_above(n, delta) - count_frac_above_estimate(n, delta)) <= 5 * n ** (1 / 3) * math.log(n)


def test_count_A_estimate():
    n = 10 ** 5
    t = 2 * math.pi * n
    residual = abs(count_A_estimate(t, 0.25) - len(enumerate_A(t, 0.25)))
    assert residual <= 5 * n ** (1 / 3) * math.log(n)
    assert count_A_estimate(2 * math.pi * 100, 0.499999) == pytest.approx(100, abs=0.01)


# ─── hyperbola sums ─────────────────────────────────────────────────────────

def test_hyperbola_small():
    assert hyperbola_double_sum(1, 0.5) == 1.0
    assert hyperbola_double_sum(10, 0.5) == pytest.approx(15.0456349206, rel=1e-10)
    with pytest.raises(DomainError):
        hyperbola_double_sum(0, 0.5)


@pytest.mark.parametrize("N", [100, 1000, 10000])
@pytest.mark.parametrize("sigma", [0.25, 0.5, 0.75])
def test_hyperbola_matches_naive(N, sigma):
    assert hyperbola_double_sum(N, sigma) == pytest.approx(naive_double_sum(N, sigma), rel=1e-10)


@pytest.mark.parametrize("sigma", [0.3, 0.5, 0.7])
def test_hyperbola_deviation_bounded(sigma):
    for N in (10 ** 2, 10 ** 3, 10 ** 4, 10 ** 5):
        assert abs(hyperbola_deviation(N, sigma)) <= 50


def test_hyperbola_asymptotic_on_critical_line():
    assert hyperbola_asymptotic(600, 0.5) == pytest.approx(600 * math.pi ** 2 / 6, rel=1e-14)
