"""Adaptive integration of ``y'' + q y = 0`` and the classical solution checks."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

from ..errors import DomainError, HypothesisViolated, NumericError, StepSizeUnderflow, ZeroInRange
from . import _kernels as K
from ._config import DEFAULT_ATOL, DEFAULT_RTOL
from .evaluator import Evaluator

MAX_STEPS = 1_000_000


@dataclass(frozen=True, eq=False)
class Trajectory:
    """An integrated solution on the accepted-step grid ``t``.

    ``mid`` holds the state at the midpoint of each accepted step (used for
    Simpson quadrature); it is ``None`` for derived trajectories.
    """

    t0: float
    t1: float
    t: np.ndarray
    y: np.ndarray
    yp: np.ndarray
    zeros: np.ndarray
    rtol: float
    atol: float
    steps: int = 0
    mid: Optional[np.ndarray] = None

    @property
    def samples(self) -> Iterator[Tuple[float, float, float]]:
        return zip(self.t.tolist(), self.y.tolist(), self.yp.tolist())

    def __len__(self):
        return self.t.shape[0]


@dataclass(frozen=True, eq=False)
class SolutionPair:
    y1: Trajectory
    y2: Trajectory
    wronskian_drift: float

    @property
    def wronskian(self) -> np.ndarray:
        return self.y1.y * self.y2.yp - self.y1.yp * self.y2.y


@dataclass(frozen=True)
class WronskianReport:
    w0: float
    drift: float
    limit: float

    @property
    def ok(self) -> bool:
        return self.drift <= self.limit


def _run(q: Evaluator, t0, t1, Y0, rtol, atol, max_steps):
    if not (rtol > 0 and atol > 0):
        raise ValueError("rtol and atol must be positive")
    if not t1 > t0:
        raise ValueError("need t1 > t0")
    if not t0 >= q.t_min:
        raise DomainError(f"t0 = {t0!r} is below t_min = {q.t_min!r}")
    nc, ne, dc, de = q.arrays
    out = K.integrate_kernel(float(t0), float(t1), np.asarray(Y0, dtype=np.float64),
                             float(rtol), float(atol), q.level, nc, ne, dc, de,
                             int(max_steps), math.inf, 0, False, True, 0.0)
    ts, Ys, Ms, zt, zi, _, status, steps = out
    if status == K.STEP_UNDERFLOW:
        raise StepSizeUnderflow(f"step size underflow near t = {ts[-1]!r}")
    if status == K.NONFINITE:
        raise NumericError(f"non-finite state or coefficient near t = {ts[-1]!r}")
    if status == K.MAX_STEPS:
        raise NumericError(f"step budget {max_steps} exhausted at t = {ts[-1]!r}")
    return ts, Ys, Ms, zt, zi, steps


def _trajectory(t0, t1, ts, Ys, Ms, zt, zi, i, rtol, atol, steps):
    zeros = np.sort(zt[zi == i])
    return Trajectory(float(t0), float(t1), ts.copy(), Ys[:, 2 * i].copy(),
                      Ys[:, 2 * i + 1].copy(), zeros, rtol, atol, steps,
                      Ms[:, 2 * i:2 * i + 2].copy())


def integrate(q: Evaluator, t0: float, t1: float, y0: float, y0p: float,
              rtol: float = DEFAULT_RTOL, atol: float = DEFAULT_ATOL,
              max_steps: int = MAX_STEPS) -> Trajectory:
    """Solve ``y'' + q y = 0`` on ``[t0, t1]`` with ``y(t0) = y0``, ``y'(t0) = y0p``."""
    res = _run(q, t0, t1, [y0, y0p], rtol, atol, max_steps)
    ts, Ys, Ms, zt, zi, steps = res
    return _trajectory(t0, t1, ts, Ys, Ms, zt, zi, 0, rtol, atol, steps)


def _drift(y1: Trajectory, y2: Trajectory) -> float:
    w = y1.y * y2.yp - y1.yp * y2.y
    w0 = w[0]
    if w0 == 0:
        return math.inf
    return float(np.max(np.abs(w - w0)) / abs(w0))


def integrate_pair(q: Evaluator, t0: float, t1: float,
                   ics: Sequence[Tuple[float, float]] = ((1.0, 0.0), (0.0, 1.0)),
                   rtol: float = DEFAULT_RTOL, atol: float = DEFAULT_ATOL,
                   max_steps: int = MAX_STEPS) -> SolutionPair:
    """Two solutions integrated together on one shared grid."""
    (a, b), (c, d) = ics
    if a * d - b * c == 0:
        raise ValueError("initial conditions are linearly dependent")
    ts, Ys, Ms, zt, zi, steps = _run(q, t0, t1, [a, b, c, d], rtol, atol, max_steps)
    y1 = _trajectory(t0, t1, ts, Ys, Ms, zt, zi, 0, rtol, atol, steps)
    y2 = _trajectory(t0, t1, ts, Ys, Ms, zt, zi, 1, rtol, atol, steps)
    return SolutionPair(y1, y2, _drift(y1, y2))


def make_pair(y1: Trajectory, y2: Trajectory) -> SolutionPair:
    if y1.t.shape != y2.t.shape or not np.array_equal(y1.t, y2.t):
        raise ValueError("trajectories do not share a grid")
    return SolutionPair(y1, y2, _drift(y1, y2))


def second_solution(y1: Trajectory) -> Trajectory:
    """``y2 = y1 * int_{t0}^t y1^-2`` by composite Simpson on the accepted steps.

    The pair ``(y1, y2)`` has Wronskian 1.
    """
    if y1.mid is None:
        raise ValueError("trajectory carries no step midpoints")
    if y1.zeros.size or np.any(y1.y == 0) or np.any(y1.mid[:, 0] == 0):
        raise ZeroInRange("y1 vanishes inside its range")
    if np.any(np.sign(y1.y) != np.sign(y1.y[0])):
        raise ZeroInRange("y1 changes sign inside its range")
    f = 1.0 / y1.y ** 2
    fm = 1.0 / y1.mid[:, 0] ** 2
    h = np.diff(y1.t)
    pieces = h / 6.0 * (f[:-1] + 4.0 * fm + f[1:])
    I = np.concatenate(([0.0], np.cumsum(pieces)))
    y2 = y1.y * I
    y2p = y1.yp * I + 1.0 / y1.y
    return Trajectory(y1.t0, y1.t1, y1.t.copy(), y2, y2p, np.empty(0), y1.rtol, y1.atol,
                      y1.steps, None)


def wronskian_check(pair: SolutionPair) -> WronskianReport:
    w0 = float(pair.wronskian[0])
    return WronskianReport(w0, pair.wronskian_drift, 100.0 * pair.y1.rtol)


def gronwall_check(q: Evaluator, c: float, traj: Trajectory, slack: float = 1e-6) -> bool:
    """Check ``|y| <= C t^(c+1)`` and ``|y'| <= C t^c`` at every sample.

    ``C = |c1| + |c2|`` with ``c2 = y'(a)`` and ``c1 = y(a) - a y'(a)``, the
    constants of ``y = c1 + c2 t - int_a^t (t-s) q(s) y(s) ds``.  ``slack``
    is a relative allowance for integration error.
    """
    a = traj.t[0]
    if a < 1:
        raise HypothesisViolated(f"the bound needs a >= 1, got a = {a!r}")
    qs = np.asarray(q(traj.t), dtype=np.float64)
    bound = np.abs(qs) * traj.t ** 2
    if not np.all(bound <= c * (1 + 1e-12)):
        worst = int(np.argmax(bound))
        raise HypothesisViolated(
            f"|q(t)| t^2 = {bound[worst]!r} exceeds c = {c!r} at t = {traj.t[worst]!r}")
    c2 = traj.yp[0]
    c1 = traj.y[0] - a * c2
    C = abs(c1) + abs(c2)
    lim = C * (1 + slack)
    ok_y = np.abs(traj.y) <= lim * traj.t ** (c + 1)
    ok_yp = np.abs(traj.yp) <= lim * traj.t ** c
    return bool(np.all(ok_y) and np.all(ok_yp))
