"""Exact oscillation decisions for ``y'' + q y = 0`` with ``q`` in the tower field.

Internally everything is phrased for ``4y'' + f y = 0`` with ``f = 4q``.
Inside the tower field of depth ``N`` the element ``h = f - omega_N`` either
satisfies ``h <= 0`` or ``h < gamma_{N+1}^2`` (then ``f <= omega_{N+1}``), or
``h >= gamma_N^2`` up to a positive constant; nothing sits strictly between
``omega_n`` and ``omega_n + c*gamma_n^2`` for all ``n``.  So the classifier
always returns a witness that one exact sign computation confirms.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import NotEventuallySigned
from .sequences import gamma, integral_diverges, omega_seq
from .tower import (
    ONE,
    Relation,
    TowerElem,
    X,
    compare,
    derive,
    render_rational,
    shift_down,
    sign_at_infinity,
)


class WitnessKind(enum.Enum):
    UPPER = "upper"  # 4q <= omega_n eventually: non-oscillating
    LOWER = "lower"  # 4q >= omega_n + c*gamma_n^2 eventually, c > 0: oscillating


@dataclass(frozen=True)
class Witness:
    kind: WitnessKind
    n: int
    c: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind is WitnessKind.LOWER and (self.c is None or self.c <= 0):
            raise ValueError("a lower-bound witness needs c > 0")
        if self.kind is WitnessKind.UPPER and self.c is not None:
            raise ValueError("an upper-bound witness carries no constant")

    @classmethod
    def upper(cls, n: int) -> "Witness":
        return cls(WitnessKind.UPPER, n)

    @classmethod
    def lower(cls, n: int, c) -> "Witness":
        return cls(WitnessKind.LOWER, n, Fraction(c))

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "n": self.n,
            "c": None if self.c is None else render_rational(self.c),
        }


@dataclass(frozen=True)
class Verdict:
    oscillating: bool
    witness: Witness
    depth_used: int
    normalized_input: TowerElem

    def __post_init__(self):
        if not verify_witness(self.normalized_input, self.witness):
            raise AssertionError(f"witness {self.witness} fails for {self.normalized_input}")
        if self.oscillating != (self.witness.kind is WitnessKind.LOWER):
            raise AssertionError("witness kind disagrees with the verdict")


def witness_gap(q: TowerElem, w: Witness) -> TowerElem:
    """The germ whose eventual sign must be >= 0 for ``w`` to hold."""
    f = 4 * TowerElem.coerce(q)
    if w.kind is WitnessKind.UPPER:
        return omega_seq(w.n) - f
    return f - omega_seq(w.n) - w.c * gamma(w.n) ** 2


def verify_witness(q: TowerElem, w: Witness) -> bool:
    if w.kind is WitnessKind.LOWER and (w.c is None or w.c <= 0):
        return False
    return sign_at_infinity(witness_gap(q, w)) >= 0


def classify(q: TowerElem) -> Verdict:
    """Decide whether ``y'' + q y = 0`` has oscillating solutions."""
    q = TowerElem.coerce(q)
    f = 4 * q
    N = f.depth
    h = f - omega_seq(N)
    if sign_at_infinity(h) <= 0:
        return Verdict(False, Witness.upper(N), N, q)
    if compare(h / gamma(N) ** 2, ONE).relation is Relation.PREC:
        # 0 < h < gamma_N^2 and h has depth N, so h < gamma_{N+1}^2
        return Verdict(False, Witness.upper(N + 1), N, q)
    n = 0
    while compare(gamma(n) ** 2, h).relation is Relation.SUCC:
        n += 1
    cmp = compare(h, gamma(n) ** 2)
    if cmp.relation is Relation.ASYMP:
        c = h.leading()[1] / gamma(n).leading()[1] ** 2 / 2
    else:
        c = Fraction(1)
    return Verdict(True, Witness.lower(n, c), N, q)


def classify_general(g: TowerElem, h: TowerElem) -> Verdict:
    """``y'' + g y' + h y = 0`` via ``q = h - g'/2 - g^2/4``."""
    g, h = TowerElem.coerce(g), TowerElem.coerce(h)
    return classify(h - derive(g) / 2 - g * g / 4)


class FLWResult(enum.Enum):
    OSCILLATING_BY_FLW = "oscillating_by_flw"
    INCONCLUSIVE = "inconclusive"


def classify_selfadjoint(f: TowerElem, g: TowerElem) -> FLWResult:
    """One-directional test for ``(f y')' + g y = 0``: oscillation follows
    when both ``int 1/f`` and ``int g`` diverge to +infinity (after making
    ``f`` positive)."""
    f, g = TowerElem.coerce(f), TowerElem.coerce(g)
    s = sign_at_infinity(f)
    if s == 0:
        raise NotEventuallySigned("f must be eventually of one sign")
    u, v = s * f.inverse(), s * g
    if sign_at_infinity(v) != 1:
        return FLWResult.INCONCLUSIVE
    if integral_diverges(u) and integral_diverges(v):
        return FLWResult.OSCILLATING_BY_FLW
    return FLWResult.INCONCLUSIVE


def phi_down(f: TowerElem) -> TowerElem:
    """Change of variable ``x -> log x``: ``f -> ((f - omega_0) x^2)`` composed
    with ``exp``.  Preserves the set of non-oscillating ``f`` (for ``4y''+fy``)."""
    f = TowerElem.coerce(f)
    return shift_down((f - omega_seq(0)) * X ** 2)


def phi_down_times(f: TowerElem, k: int) -> TowerElem:
    for _ in range(k):
        f = phi_down(f)
    return f
