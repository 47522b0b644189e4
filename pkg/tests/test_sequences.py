import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hardyosc.errors import DivisionByZero, NotEventuallyPositive
from hardyosc.sequences import (
    ell, gamma, integral_diverges, lambda_, omega_map, omega_seq, riccati_check,
    sequence_table, sigma_gamma, sigma_map,
)
from hardyosc.tower import X, ZERO, TowerElem, derive, pow_, sign_at_infinity

from germs import germ


def test_constructors():
    assert gamma(1) == TowerElem.monomial([-1, -1])
    assert omega_seq(0) == TowerElem.monomial([-2])
    assert lambda_(1) == gamma(0) + gamma(1)
    with pytest.raises(ValueError):
        gamma(-1)


def test_omega_map():
    assert omega_map(ZERO) == ZERO
    assert omega_map(1 / X) == 1 / X ** 2
    for n in range(6):
        assert omega_map(lambda_(n)) == omega_seq(n)


def test_sigma_map():
    assert sigma_map(1 / X) == 2 / X ** 2
    for n in range(6):
        assert sigma_map(gamma(n)) == omega_seq(n) + gamma(n) ** 2
    with pytest.raises(DivisionByZero):
        sigma_map(ZERO)


@given(st.integers(0, 10**6))
def test_sigma_even(seed):
    y = germ(random.Random(seed), 2, 2)
    assert sigma_map(-y) == sigma_map(y)


def test_riccati_check():
    assert riccati_check(ZERO, ZERO)
    assert not riccati_check(ZERO, TowerElem.const(1))
    for n in range(6):
        y = pow_(gamma(n), Fraction(-1, 2))
        # z = y'/y solves z' + z^2 + q = 0 for y'' + q y = 0 with q = omega_n/4
        assert riccati_check(derive(y) / y, omega_seq(n) / 4)


def test_integral_diverges():
    assert integral_diverges(1 / X)
    assert not integral_diverges(1 / (X * ell(1) ** 2))
    assert integral_diverges(gamma(2))
    assert integral_diverges(TowerElem.const(3))
    assert not integral_diverges(X ** -2)
    with pytest.raises(NotEventuallyPositive):
        integral_diverges(-1 / X)


def test_chains_monotone_and_interleaved():
    for n in range(7):
        assert sign_at_infinity(omega_seq(n + 1) - omega_seq(n)) == 1
        assert sign_at_infinity(sigma_gamma(n) - sigma_gamma(n + 1)) == 1
    for n in range(7):
        for m in range(7):
            assert sign_at_infinity(sigma_gamma(m) - omega_seq(n)) == 1


def test_sequence_table_consistent():
    for n in range(6):
        t = sequence_table(n)
        assert t.ell == ell(n)
        assert t.check()
