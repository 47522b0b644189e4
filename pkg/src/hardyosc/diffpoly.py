"""Differential polynomials over the tower field.

A :class:`DiffPoly` is a polynomial in ``Y, Y', ..., Y^(r)`` stored as a map
from exponent multi-indices ``(i0, ..., ir)`` to tower coefficients.  Its
logarithmic decomposition (:class:`LogDecomp`) is the same polynomial written
in the iterated logarithmic derivatives ``Y<0> = Y`` and
``Y<k+1> = (Y<k>)'/Y<k>``, using ``(Y<k>)' = Y<k> Y<k+1>``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .errors import DivisionByZero, UndefinedIterLogDeriv, ZeroPolynomial
from .tower import ONE, ZERO, TowerElem, derive, render, sign_at_infinity

MAX_ORDER = 8

Index = Tuple[int, ...]


def _trim(idx: Iterable[int]) -> Index:
    idx = list(idx)
    while idx and idx[-1] == 0:
        idx.pop()
    return tuple(idx)


def _add_idx(a: Index, b: Index) -> Index:
    n = max(len(a), len(b))
    a = a + (0,) * (n - len(a))
    b = b + (0,) * (n - len(b))
    return tuple(x + y for x, y in zip(a, b))


def _padded(idx: Index, n: int) -> Index:
    return idx + (0,) * (n - len(idx))


class _Poly:
    """Shared sparse storage: trimmed multi-index -> nonzero TowerElem."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Iterable[int], object]] = None):
        clean: Dict[Index, TowerElem] = {}
        for idx, c in (terms or {}).items():
            c = TowerElem.coerce(c)
            if c:
                key = _trim(idx)
                s = clean.get(key, ZERO) + c
                if s:
                    clean[key] = s
                else:
                    clean.pop(key, None)
        if any(len(k) > MAX_ORDER + 1 for k in clean):
            raise ValueError(f"order exceeds {MAX_ORDER}")
        self.terms = clean

    @classmethod
    def _from_clean(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @property
    def order(self) -> int:
        return max((len(k) - 1 for k in self.terms), default=0)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return type(self) is type(other) and self.terms == other.terms

    def __hash__(self):
        return hash((type(self).__name__, frozenset(self.terms.items())))

    def _combine(self, other, sign=1):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, ZERO) + (c if sign > 0 else -c)
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return type(self)._from_clean(out)

    def __add__(self, other):
        other = self._lift(other)
        return self._combine(other)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(self._lift(other), -1)

    def __rsub__(self, other):
        return self._lift(other)._combine(self, -1)

    def __neg__(self):
        return type(self)._from_clean({k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (TowerElem, int)) or not isinstance(other, _Poly):
            c = TowerElem.coerce(other)
            if not c:
                return type(self)()
            return type(self)._from_clean({k: v * c for k, v in self.terms.items()})
        out: Dict[Index, TowerElem] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = _add_idx(k1, k2)
                s = out.get(k, ZERO) + c1 * c2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return type(self)._from_clean(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = TowerElem.coerce(other)
        if not c:
            raise DivisionByZero("division of a differential polynomial by 0")
        return self * c.inverse()

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a differential polynomial")
        out = type(self)({(): ONE})
        for _ in range(k):
            out = out * self
        return out

    def _lift(self, other):
        if isinstance(other, type(self)):
            return other
        return type(self)({(): TowerElem.coerce(other)})

    def coefficient(self, idx: Iterable[int]) -> TowerElem:
        return self.terms.get(_trim(idx), ZERO)

    def sorted_items(self):
        n = self.order + 1
        return sorted(self.terms.items(), key=lambda kv: _padded(kv[0], n), reverse=True)

    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=0)


class DiffPoly(_Poly):
    """Polynomial in ``Y, Y', ..., Y^(r)``; index ``i_m`` is the power of ``Y^(m)``."""

    __slots__ = ()

    @classmethod
    def Y(cls, m: int = 0) -> "DiffPoly":
        """The variable ``Y^(m)``."""
        return cls({(0,) * m + (1,): ONE})

    def render(self) -> str:
        return _render(self, _std_var)

    def __repr__(self):
        return f"DiffPoly({self.render()!r})"


class LogDecomp(_Poly):
    """Polynomial in ``Y<0>, ..., Y<r>``; index ``i_k`` is the power of ``Y<k>``."""

    __slots__ = ()

    @property
    def lead_index(self) -> Index:
        """Lexicographically maximal index with nonzero coefficient (padded)."""
        if not self.terms:
            raise ZeroPolynomial("zero has no leading index")
        n = self.order + 1
        return max(_padded(k, n) for k in self.terms)

    def render(self) -> str:
        return _render(self, _log_var)

    def __repr__(self):
        return f"LogDecomp({self.render()!r})"


@dataclass(frozen=True)
class IterLogDerivs:
    """``y<0> = y, y<k+1> = (y<k>)'/y<k>``, stopping at the first zero."""

    base: TowerElem
    values: Tuple[TowerElem, ...] = field(default=())

    @classmethod
    def compute(cls, y: TowerElem, n: int) -> "IterLogDerivs":
        y = TowerElem.coerce(y)
        vals = [y]
        while len(vals) <= n and vals[-1]:
            v = vals[-1]
            vals.append(derive(v) / v)
        return cls(y, tuple(vals))

    def defined_up_to(self) -> int:
        """Largest ``k`` with ``y<k>`` defined."""
        return len(self.values) - 1

    def __getitem__(self, k: int) -> TowerElem:
        if k >= len(self.values):
            raise UndefinedIterLogDeriv(f"y<{k}> is undefined for y = {render(self.base)}")
        return self.values[k]


# ------------------------------------------------------------ decomposition

@lru_cache(maxsize=None)
def _derivative_in_log_form(m: int) -> Tuple[Tuple[Index, int], ...]:
    """``Y^(m)`` as an integer polynomial in ``Y<0..m>``."""
    if m == 0:
        return (((1,), 1),)
    out: Dict[Index, int] = {}
    for idx, c in _derivative_in_log_form(m - 1):
        # d/dx of prod (Y<k>)^a_k = sum_k a_k * prod(...) * Y<k+1>
        for k, a in enumerate(idx):
            if a:
                bump = [0] * (k + 2)
                bump[k + 1] = 1
                key = _add_idx(idx, tuple(bump))
                out[key] = out.get(key, 0) + a * c
    return tuple(sorted((k, c) for k, c in out.items() if c))


def _log_var_poly(m: int) -> LogDecomp:
    return LogDecomp({idx: c for idx, c in _derivative_in_log_form(m)})


def to_log_decomposition(P: DiffPoly) -> LogDecomp:
    out = LogDecomp()
    for idx, coeff in P.terms.items():
        term = LogDecomp({(): coeff})
        for m, power in enumerate(idx):
            if power:
                term = term * (_log_var_poly(m) ** power)
        out = out + term
    return out


# ---------------------------------------------------------------- evaluation

def derivatives(y: TowerElem, r: int, phi: TowerElem = ONE) -> list:
    """``[y, dy, ..., d^r y]`` for the derivation ``d = phi^{-1} d/dx``."""
    y = TowerElem.coerce(y)
    inv_phi = None if phi == ONE else TowerElem.coerce(phi).inverse()
    out = [y]
    for _ in range(r):
        d = derive(out[-1])
        out.append(d if inv_phi is None else d * inv_phi)
    return out


def _eval(terms, values) -> TowerElem:
    total = ZERO
    for idx, c in terms.items():
        term = c
        for k, power in enumerate(idx):
            if power:
                term = term * values[k] ** power
        total = total + term
    return total


def eval_diffpoly(P: DiffPoly, y: TowerElem, phi: TowerElem = ONE) -> TowerElem:
    """``P(y)``; with ``phi`` given, ``Y^(m)`` is read as the m-th derivative
    for ``phi^{-1} d/dx``."""
    return _eval(P.terms, derivatives(y, P.order, phi))


def eval_logdecomp(D: LogDecomp, y: TowerElem) -> TowerElem:
    it = IterLogDerivs.compute(y, D.order)
    values = [it[k] for k in range(D.order + 1)]
    return _eval(D.terms, values)


# ----------------------------------------------------------------- conjugation

def mult_conjugate(P: DiffPoly, g: TowerElem) -> DiffPoly:
    """``P_{xg} = P(gY)`` expanded via ``(gY)^(n) = sum C(n,k) g^(n-k) Y^(k)``."""
    g = TowerElem.coerce(g)
    if not g:
        raise DivisionByZero("multiplicative conjugation by 0")
    gd = derivatives(g, P.order)
    images = [
        DiffPoly({(0,) * k + (1,): comb(n, k) * gd[n - k] for k in range(n + 1)})
        for n in range(P.order + 1)
    ]
    return _substitute(P, images)


def _derivation(Q: DiffPoly, inv_phi: TowerElem) -> DiffPoly:
    """Apply ``d = phi^{-1} d/dx`` where ``Y^(k)`` denotes ``d^k Y``."""
    out: Dict[Index, TowerElem] = {}

    def put(k, c):
        s = out.get(k, ZERO) + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)

    for idx, c in Q.terms.items():
        dc = derive(c)
        if dc:
            put(idx, dc * inv_phi)
        for k, a in enumerate(idx):
            if a:
                lowered = list(idx) + [0]
                lowered[k] -= 1
                lowered[k + 1] += 1
                put(_trim(lowered), c * a)
    return DiffPoly._from_clean(out)


def comp_conjugate(P: DiffPoly, phi: TowerElem, base: TowerElem = ONE) -> DiffPoly:
    """``P^phi``: rewrite ``P`` in the derivatives for ``phi^{-1} d``,
    where ``d = base^{-1} d/dx`` is the derivation ``P`` is written in."""
    phi = TowerElem.coerce(phi)
    if not phi:
        raise DivisionByZero("compositional conjugation by 0")
    new_inv = (TowerElem.coerce(base) * phi).inverse()
    images = [DiffPoly.Y(0)]
    for _ in range(P.order):
        images.append(_derivation(images[-1], new_inv) * phi)
    return _substitute(P, images)


def _substitute(P: DiffPoly, images) -> DiffPoly:
    out = DiffPoly()
    for idx, c in P.terms.items():
        term = DiffPoly({(): c})
        for m, power in enumerate(idx):
            if power:
                term = term * images[m] ** power
        out = out + term
    return out


def riccati_operator(f: TowerElem) -> DiffPoly:
    """``4Y'' + fY``."""
    return 4 * DiffPoly.Y(2) + DiffPoly.Y(0) * TowerElem.coerce(f)


def chvar_reduce(f: TowerElem, g: TowerElem) -> Tuple[TowerElem, TowerElem]:
    """Return ``(q, phi)`` with ``phi = g^-2`` and ``q = g^3 (4g'' + f g)``,
    so that ``g^3 (4Y''+fY)_{xg}^phi = 4Y'' + qY``."""
    f, g = TowerElem.coerce(f), TowerElem.coerce(g)
    if not g:
        raise DivisionByZero("chvar needs g != 0")
    g2 = derive(derive(g))
    return g ** 3 * (4 * g2 + f * g), g ** -2


def chvar_lhs(f: TowerElem, g: TowerElem) -> DiffPoly:
    """``g^3 (4Y''+fY)_{xg}^phi`` computed by explicit conjugation."""
    g = TowerElem.coerce(g)
    P = mult_conjugate(riccati_operator(f), g)
    return comp_conjugate(P, g ** -2) * g ** 3


# ------------------------------------------------------------------ signs

@dataclass(frozen=True)
class DominantSign:
    lead_index: Index
    coefficient: TowerElem
    sign: int
    sign_negative: int


def dominant_sign_at_large_argument(D: LogDecomp) -> DominantSign:
    """Eventual sign of ``P(y)`` for all sufficiently fast growing ``y > 0``
    (and of ``P(-y)``), read off the lexicographically leading term."""
    if not D:
        raise ZeroPolynomial("dominant sign of the zero polynomial")
    j = D.lead_index
    c = D.coefficient(j)
    s = sign_at_infinity(c)
    return DominantSign(j, c, s, s if j[0] % 2 == 0 else -s)


# ----------------------------------------------------------------- rendering

def _std_var(m: int) -> str:
    return "Y" + "'" * m


def _log_var(k: int) -> str:
    return f"Y<{k}>"


def _render(P: _Poly, var) -> str:
    if not P:
        return "0"
    parts = []
    for i, (idx, c) in enumerate(P.sorted_items()):
        factors = []
        for k, a in enumerate(idx):
            if a == 1:
                factors.append(var(k))
            elif a:
                factors.append(f"{var(k)}^{a}")
        mono = "*".join(factors)
        cs = render(c)
        neg = cs.startswith("-") and (len(c.num) == 1 and c.den.is_one())
        if neg:
            cs = cs[1:]
        if not mono:
            body = cs if not (len(c.num) > 1 or not c.den.is_one()) else f"({cs})"
        elif cs == "1":
            body = mono
        elif len(c.num) > 1 or not c.den.is_one():
            body = f"({cs})*{mono}"
        else:
            body = f"{cs}*{mono}"
        if i == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)
