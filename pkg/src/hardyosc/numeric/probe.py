"""Heuristic numeric oscillation probe.

For ``q`` of depth ``N`` the probe works at level ``k = N + 1``: with
``s = l_k(t)`` and ``y = gamma_{k-1}^{-1/2} z`` the equation becomes
``z'' + (h/4) z = 0`` in ``s``, where ``h = (4q - omega_{k-1}) / gamma_{k-1}^2``.
Oscillation then shows up as ordinary zeros in ``s`` rather than zeros
spread over astronomically many decades of ``t``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..errors import DepthTooLargeForNumerics
from ..sequences import gamma, omega_seq
from ..tower import TowerElem
from . import _kernels as K
from ._config import (
    DEFAULT_ATOL,
    DEFAULT_RTOL,
    DEFAULT_WINDOW,
    PROBE_EXTENSION_BUDGET,
    PROBE_EXTENSION_FACTOR,
    PROBE_MAX_STEPS,
    PROBE_OSCILLATING_ZEROS,
    PROBE_QUIESCENT_ZEROS,
)
from .evaluator import MAX_NUMERIC_DEPTH, compile, iterated_exp, iterated_log


class ProbeTrend(enum.Enum):
    OSCILLATING = "oscillating_trend"
    QUIESCENT = "quiescent_trend"
    AMBIGUOUS = "ambiguous"


@dataclass(frozen=True)
class ProbeResult:
    trend: ProbeTrend
    level: int
    s_window: Tuple[float, float]
    tail_zeros: Tuple[int, int]
    rounds: int

    def to_json(self) -> dict:
        return {
            "trend": self.trend.value,
            "level": self.level,
            "s_window": list(self.s_window),
            "tail_zeros": list(self.tail_zeros),
        }


def level_transform(q, k: int) -> TowerElem:
    """``(4q - omega_{k-1}) / gamma_{k-1}^2`` for ``k >= 1``."""
    q = TowerElem.coerce(q)
    return (4 * q - omega_seq(k - 1)) / gamma(k - 1) ** 2


def numeric_oscillation_probe(q, window: Optional[Tuple[float, float]] = None,
                              rtol: float = DEFAULT_RTOL,
                              atol: float = DEFAULT_ATOL) -> ProbeResult:
    """Integrate two independent solutions and report the zero trend.

    ``window`` is in the original variable ``t``.  It is extended
    geometrically (in the level variable) up to the configured budget until
    both solutions show enough zeros past the first third of the window.
    """
    q = TowerElem.coerce(q)
    if q.depth > MAX_NUMERIC_DEPTH:
        raise DepthTooLargeForNumerics(
            f"depth {q.depth} > {MAX_NUMERIC_DEPTH}; reduce with phi_down first")
    k = q.depth + 1
    ev = compile(level_transform(q, k) / 4, level=k)
    nc, ne, dc, de = ev.arrays

    t0, t1 = window if window is not None else DEFAULT_WINDOW
    t0 = max(t0, iterated_exp(k - 1) * 1.001)
    s0 = iterated_log(k, t0)
    s1 = iterated_log(k, t1)
    if not (math.isfinite(s1) and s1 > s0):
        s1 = s0 + 1.0
    base = s1 - s0

    Y0 = np.array([1.0, 0.0, 0.0, 1.0])
    span = base
    rounds = 0
    tails = (0, 0)
    while True:
        rounds += 1
        end = s0 + span
        tail_start = s0 + span / 3.0
        out = K.integrate_kernel(s0, end, Y0, rtol, atol, k, nc, ne, dc, de,
                                 PROBE_MAX_STEPS, tail_start, PROBE_OSCILLATING_ZEROS,
                                 True, False, 0.0)
        _, _, _, _, _, counts, status, _ = out
        tails = (int(counts[0]), int(counts[1]))
        if status == K.ZERO_QUOTA:
            trend = ProbeTrend.OSCILLATING
            break
        exhausted = span * PROBE_EXTENSION_FACTOR > base * PROBE_EXTENSION_BUDGET * (1 + 1e-9)
        if status != K.REACHED_END or exhausted:
            if max(tails) <= PROBE_QUIESCENT_ZEROS:
                trend = ProbeTrend.QUIESCENT
            else:
                trend = ProbeTrend.AMBIGUOUS
            break
        span *= PROBE_EXTENSION_FACTOR
    return ProbeResult(trend, k, (s0, s0 + span), tails, rounds)
