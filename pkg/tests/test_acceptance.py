"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` (or ``python3 tests/test_acceptance.py``).
"""
import contextlib
import functools
import io
import math
import random
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from hardyosc.cli import main as cli_main
from hardyosc.diffpoly import (
    DiffPoly, LogDecomp, chvar_lhs, eval_diffpoly, eval_logdecomp, riccati_operator,
    to_log_decomposition,
)
from hardyosc.numeric import (
    ProbeTrend, compile, gronwall_check, integrate, integrate_pair, numeric_oscillation_probe,
)
from hardyosc.oscillation import classify, phi_down
from hardyosc.sequences import gamma, lambda_, omega_map, omega_seq, sigma_gamma, sigma_map
from hardyosc.tower import ONE, X, ZERO, TowerElem, derive, pow_, shift_up, sign_at_infinity

from cli_cases import CASES, golden_path
from germs import diffpoly, germ, monomial_family, near_boundary

RESULTS = {}


def criterion(num, title):
    """Record and print the outcome of an acceptance check."""
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                RESULTS[num] = False
                print(f"\n[FAIL] criterion {num:2d}: {title}")
                raise
            RESULTS[num] = True
            print(f"\n[PASS] criterion {num:2d}: {title}")
        return run
    return wrap


@contextlib.contextmanager
def time_limit(seconds):
    t0 = time.perf_counter()
    yield
    elapsed = time.perf_counter() - t0
    assert elapsed < seconds, f"took {elapsed:.2f} s, limit {seconds} s"


# ---------------------------------------------------------------------------

@criterion(1, "Riemann-Weber grid: (omega_n + c gamma_n^2)/4 oscillates iff c > 0, 30 cases, < 1 s")
def test_criterion_01_riemann_weber_grid():
    cs = [Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2)]
    with time_limit(1.0):
        for n in range(5):
            for c in cs:
                v = classify((omega_seq(n) + c * gamma(n) ** 2) / 4)
                assert v.oscillating == (c > 0), (n, c)


@criterion(2, "4Y'' + omega_n Y vanishes at gamma_n^(-1/2) exactly for n <= 5, < 1 s")
def test_criterion_02_symbolic_ode_identity():
    with time_limit(1.0):
        for n in range(6):
            y = pow_(gamma(n), Fraction(-1, 2))
            assert eval_diffpoly(riccati_operator(omega_seq(n)), y) == ZERO


@criterion(3, "ladder identities for lambda, omega, sigma exact for n <= 6")
def test_criterion_03_ladder_identities():
    for n in range(7):
        assert lambda_(n + 1) == lambda_(n) + gamma(n + 1)
        assert omega_seq(n + 1) == omega_seq(n) + gamma(n + 1) ** 2
        assert omega_map(lambda_(n)) == omega_seq(n)
        assert sigma_map(gamma(n)) == omega_seq(n) + gamma(n) ** 2
        assert sigma_gamma(n) == omega_seq(n) + gamma(n) ** 2


@criterion(4, "gauge change g^3 (4Y''+fY)^phi_xg = 4Y'' + g^3 P(g) Y, 50 random pairs of depth <= 2")
def test_criterion_04_chvar_identity():
    rng = random.Random(20240404)
    Y = DiffPoly.Y
    for _ in range(50):
        f, g = germ(rng, 2), germ(rng, 2, 2)
        Pg = eval_diffpoly(riccati_operator(f), g)
        assert chvar_lhs(f, g) == 4 * Y(2) + (g ** 3 * Pg) * Y(0)


@criterion(5, "Sturm monotonicity: 500 ordered pairs, no counterexample")
def test_criterion_05_sturm_monotonicity():
    rng = random.Random(5005)
    checked = 0
    oscillating_lower = 0
    while checked < 500:
        q1 = near_boundary(rng, 3) if rng.random() < 0.7 else germ(rng, 3, 2)
        q2 = near_boundary(rng, 3) if rng.random() < 0.5 else q1 + germ(rng, 3, 2)
        s = sign_at_infinity(q2 - q1)
        if s < 0:
            q1, q2 = q2, q1
        checked += 1
        if classify(q1).oscillating:
            oscillating_lower += 1
            assert classify(q2).oscillating, (q1, q2)
    # the implication must have been exercised, not vacuously true
    assert oscillating_lower >= 100


@criterion(6, "phi_down preserves the verdict on 200 random germs; phi_down(omega_n) = omega_{n-1}")
def test_criterion_06_phi_invariance():
    rng = random.Random(606)
    seen = {True: 0, False: 0}
    for _ in range(200):
        g = 4 * near_boundary(rng, 2) if rng.random() < 0.6 else germ(rng, 2)
        f = omega_seq(0) + shift_up(g) / X ** 2  # depth <= 3 and phi_down(f) = g
        assert f.depth <= 3
        h = phi_down(f)
        assert h == g
        verdict = classify(f / 4).oscillating
        assert verdict == classify(h / 4).oscillating, f
        seen[verdict] += 1
    assert min(seen.values()) >= 50
    for n in range(1, 6):
        assert phi_down(omega_seq(n)) == omega_seq(n - 1)


@criterion(7, "logarithmic decomposition: worked example verbatim; evaluation equality 50 x 25")
def test_criterion_07_log_decomposition():
    Y = DiffPoly.Y
    D = to_log_decomposition(2 * Y(0) ** 3 + Y(1) * Y(2))
    assert D == LogDecomp({(3,): 2, (2, 3): 1, (2, 2, 1): 1})
    assert D.render() == "2*Y<0>^3 + Y<0>^2*Y<1>^3 + Y<0>^2*Y<1>^2*Y<2>"
    rng = random.Random(777)
    family = monomial_family()
    assert len(family) == 25
    for _ in range(50):
        P = diffpoly(rng, 3)
        D = to_log_decomposition(P)
        for y in family:
            assert eval_diffpoly(P, y) == eval_logdecomp(D, y)


@criterion(8, "Euler q = a/t^2: zero counts within 1 of the closed form; drift < 1e-7; < 10 s")
def test_criterion_08_euler_numerics(jit_warm):
    t0, t1 = 10.0, 1e6
    with time_limit(10.0):
        for a in (Fraction(1, 2), Fraction(1), Fraction(5, 2)):
            pair = integrate_pair(compile(a / X ** 2), t0, t1)
            expect = math.floor(math.sqrt(a - Fraction(1, 4)) * math.log(t1 / t0) / math.pi)
            for tr in (pair.y1, pair.y2):
                assert abs(tr.zeros.size - expect) <= 1, (a, tr.zeros.size, expect)
            assert pair.wronskian_drift < 1e-7, (a, pair.wronskian_drift)


@criterion(9, "growth bound |y| <= C t^(c+1), |y'| <= C t^c at every step, 10 random ICs, c = 2")
def test_criterion_09_gronwall_bound(jit_warm):
    rng = np.random.default_rng(909)
    for q in (2 / X ** 2, -2 / X ** 2):
        ev = compile(q)
        for y0, yp0 in rng.uniform(-1.0, 1.0, size=(10, 2)):
            tr = integrate(ev, 1.0, 1e4, float(y0), float(yp0))
            assert gronwall_check(ev, 2.0, tr)


def probe_corpus():
    w = omega_seq
    osc = [
        ONE, 1 / X, 2 / X ** 2, (w(0) + gamma(0) ** 2) / 4, TowerElem.monomial([-2, 1]),
        (w(1) + gamma(1) ** 2) / 4, (w(2) + gamma(2) ** 2) / 4, (w(1) + 3 * gamma(1) ** 2) / 4,
        w(0) / 4 + TowerElem.monomial([-2, -1]), w(2) / 4 + gamma(2) ** 2 / 2,
    ]
    non = [
        ZERO, -ONE, 1 / (4 * X ** 2), w(1) / 4, w(2) / 4, -1 / X ** 2, 1 / (8 * X ** 2),
        (w(1) - gamma(1) ** 2) / 4, TowerElem.monomial([-2, -1]), (w(2) - gamma(2) ** 2 / 2) / 4,
    ]
    return osc, non


@criterion(10, "probe never contradicts the exact classifier on a 20-germ corpus, < 60 s")
def test_criterion_10_probe_consistency(jit_warm):
    osc, non = probe_corpus()
    assert all(classify(q).oscillating for q in osc)
    assert not any(classify(q).oscillating for q in non)
    with time_limit(60.0):
        for q in osc:
            assert numeric_oscillation_probe(q).trend is not ProbeTrend.QUIESCENT, q
        for q in non:
            assert numeric_oscillation_probe(q).trend is not ProbeTrend.OSCILLATING, q


@criterion(11, "12 fixed CLI invocations reproduce the committed JSON byte for byte")
def test_criterion_11_cli_goldens():
    assert len(CASES) == 12
    for name, argv in CASES.items():
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code = cli_main(argv)
        assert code == 0, name
        with open(golden_path(name), "rb") as fh:
            assert buf.getvalue().encode("utf-8") == fh.read(), name


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-s", "-q"]))
