import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hardyosc.errors import NotEventuallySigned, NotShiftable
from hardyosc.oscillation import (
    FLWResult, Verdict, Witness, WitnessKind, classify, classify_general,
    classify_selfadjoint, phi_down, phi_down_times, verify_witness,
)
from hardyosc.sequences import gamma, omega_seq, sigma_gamma
from hardyosc.tower import ONE, X, ZERO, TowerElem, sign_at_infinity

from germs import germ, near_boundary

seeds = st.integers(0, 10**6)


@pytest.mark.parametrize("q, oscillating, n", [
    (1 / (4 * X ** 2), False, 0),
    (2 / (4 * X ** 2), True, 0),
    (omega_seq(2) / 4, False, 2),
    ((omega_seq(2) + gamma(2) ** 2) / 4, True, 2),
    (TowerElem.const(1), True, 0),
    (ZERO, False, 0),
])
def test_classify_examples(q, oscillating, n):
    v = classify(q)
    assert v.oscillating is oscillating
    assert v.witness.n == n
    assert verify_witness(q, v.witness)


def test_classify_witness_constants():
    v = classify((omega_seq(3) + gamma(3) ** 2 / 2) / 4)
    assert v.witness == Witness.lower(3, Fraction(1, 4))
    v = classify(TowerElem.const(1))
    assert v.witness == Witness.lower(0, 1)
    v = classify((omega_seq(1) + gamma(2) ** 2 / 1000) / 4)
    assert v.witness == Witness.upper(2) and not v.oscillating


def test_classify_general():
    q = (omega_seq(1) + gamma(1) ** 2) / 4
    assert classify_general(ZERO, q).oscillating == classify(q).oscillating
    v = classify_general(1 / X, ZERO)
    assert not v.oscillating and v.normalized_input == 1 / (4 * X ** 2)
    assert classify_general(ZERO, q).oscillating


def test_classify_selfadjoint():
    assert classify_selfadjoint(ONE, 1 / X) is FLWResult.OSCILLATING_BY_FLW
    assert classify_selfadjoint(ONE, 1 / X ** 2) is FLWResult.INCONCLUSIVE
    assert classify_selfadjoint(X ** 2, ONE) is FLWResult.INCONCLUSIVE
    assert classify_selfadjoint(-ONE, -1 / X) is FLWResult.OSCILLATING_BY_FLW
    with pytest.raises(NotEventuallySigned):
        classify_selfadjoint(ZERO, ONE)


def test_phi_down_examples():
    for n in range(1, 6):
        assert phi_down(omega_seq(n)) == omega_seq(n - 1)
    assert phi_down(omega_seq(0)) == ZERO
    assert phi_down(omega_seq(0) + gamma(0) ** 2) == ONE
    assert phi_down_times(omega_seq(4), 2) == omega_seq(2)
    with pytest.raises(NotShiftable):
        phi_down(ONE)


def test_verify_witness_examples():
    assert verify_witness(1 / (4 * X ** 2), Witness.upper(0))
    assert not verify_witness(1 / (2 * X ** 2), Witness.upper(0))
    assert verify_witness(1 / (2 * X ** 2), Witness.lower(0, 1))


def test_witness_invariants():
    with pytest.raises(ValueError):
        Witness(WitnessKind.LOWER, 0, Fraction(0))
    with pytest.raises(ValueError):
        Witness(WitnessKind.UPPER, 0, Fraction(1))
    with pytest.raises(AssertionError):
        Verdict(False, Witness.upper(0), 0, TowerElem.const(1))


def test_chain_consistency():
    for n in range(7):
        assert not classify(omega_seq(n) / 4).oscillating
        assert classify(sigma_gamma(n) / 4).oscillating


@given(seeds)
def test_witness_soundness(seed):
    rng = random.Random(seed)
    q = near_boundary(rng, 3) if rng.random() < 0.6 else germ(rng, 3)
    v = classify(q)
    assert verify_witness(q, v.witness)
    assert v.witness.kind is (WitnessKind.LOWER if v.oscillating else WitnessKind.UPPER)


@given(seeds)
def test_sturm_monotone(seed):
    rng = random.Random(seed)
    q1 = near_boundary(rng, 3)
    d = germ(rng, 3, 2)
    if sign_at_infinity(d) < 0:
        d = -d
    if classify(q1).oscillating:
        assert classify(q1 + d).oscillating
