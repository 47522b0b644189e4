"""Compile exact germs into float evaluators."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import DepthTooLargeForNumerics, DomainError
from ..tower import TowerElem, TowerPoly
from ._kernels import eval_coeff

MAX_NUMERIC_DEPTH = 3
DOMAIN_MARGIN = 1e-6
_TINY = np.finfo(float).tiny


def iterated_exp(k: int, x: float = 1.0) -> float:
    """``exp`` applied ``k`` times; ``k < 0`` means ``0`` (the edge of ``t > 0``)."""
    if k < 0:
        return 0.0
    for _ in range(k):
        x = math.exp(x) if x < 709.78 else math.inf
    return x


def iterated_log(k: int, t: float) -> float:
    """``l_k(t)``; NaN where undefined."""
    for _ in range(k):
        if not t > 0:
            return math.nan
        t = math.log(t)
    return t


def _pack(p: TowerPoly, width: int):
    terms = p.sorted_terms()
    c = np.array([float(v) for _, v in terms], dtype=np.float64)
    e = np.zeros((len(terms), width), dtype=np.float64)
    for i, (m, _) in enumerate(terms):
        for j, x in enumerate(m):
            e[i, j] = float(x)
    return c, e


@dataclass(frozen=True, eq=False)
class Evaluator:
    """Float view of ``source`` as a function of ``s`` where ``t = exp_level(s)``.

    With the default ``level = 0`` the argument is ``t`` itself.
    """

    source: TowerElem
    depth: int
    t_min: float
    level: int = 0
    _arrays: tuple = field(default=(), repr=False)

    @property
    def arrays(self):
        return self._arrays

    def _check(self, s):
        if not s >= self.t_min:
            raise DomainError(f"evaluation point {s!r} below t_min = {self.t_min!r}")

    def __call__(self, t):
        nc, ne, dc, de = self._arrays
        L = np.empty(ne.shape[1])
        if np.ndim(t) == 0:
            self._check(t)
            return float(eval_coeff(float(t), self.level, nc, ne, dc, de, L))
        ts = np.asarray(t, dtype=np.float64)
        if ts.size and not np.all(ts >= self.t_min):
            raise DomainError(f"evaluation points below t_min = {self.t_min!r}")
        out = np.empty(ts.shape)
        flat = out.reshape(-1)
        for i, v in enumerate(ts.reshape(-1)):
            flat[i] = eval_coeff(float(v), self.level, nc, ne, dc, de, L)
        return out


def compile(f, level: int = 0) -> Evaluator:  # noqa: A001 - mirrors the public operation name
    """Float evaluator for the exact germ ``f``.

    ``level > 0`` evaluates ``f(exp_level(s))`` in log-space, which keeps
    arguments far beyond the float range usable.
    """
    f = TowerElem.coerce(f)
    depth = f.depth
    if depth > MAX_NUMERIC_DEPTH:
        raise DepthTooLargeForNumerics(
            f"depth {depth} exceeds the numeric cap of {MAX_NUMERIC_DEPTH}")
    d = depth - level
    if d < 0:
        t_min = -math.inf
    elif d == 0:
        t_min = _TINY
    else:
        t_min = iterated_exp(d - 1) * (1.0 + DOMAIN_MARGIN)
    width = max(depth + 1, level + 1)
    nc, ne = _pack(f.num, width)
    dc, de = _pack(f.den, width)
    return Evaluator(f, depth, t_min, level, (nc, ne, dc, de))
