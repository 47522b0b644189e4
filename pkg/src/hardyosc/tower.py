"""Exact arithmetic in the field of generalized rational functions of the
iterated logarithms ``l0 = x, l1 = log x, l2 = log log x, ...``.

Elements are quotients of generalized polynomials whose monomials carry
rational exponents.  Asymptotic comparison at +infinity is decided by the
lexicographic order on exponent vectors: a larger ``l0`` exponent dominates,
ties are broken by ``l1``, and so on, because ``l_{k+1}`` grows slower than
every positive power of ``l_k``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Dict, Iterable, Mapping, Tuple, Union

from sympy import QQ
from sympy import integer_nthroot
from sympy.polys.rings import ring
from sympy.polys.euclidtools import dmp_inner_gcd
from sympy.polys.polyerrors import HeuristicGCDFailed

from .errors import (
    DivisionByZero,
    IrrationalCoefficientPower,
    NonMonomialLog,
    NonMonomialPower,
    NotShiftable,
)

Rational = Union[int, Fraction]


def _exact(e) -> Rational:
    """Normalize an exponent to ``int`` when integral, ``Fraction`` otherwise."""
    if isinstance(e, int):
        return e
    e = Fraction(e)
    return e.numerator if e.denominator == 1 else e


class Monomial(tuple):
    """Exponent vector ``(e0, ..., eN)`` standing for ``prod l_k^e_k``.

    Trailing zeros are trimmed, so structural equality is mathematical
    equality.  ``<`` is the dominance order (lexicographic with implicit zero
    padding).
    """

    __slots__ = ()

    def __new__(cls, exponents: Iterable = ()):
        exps = [_exact(e) for e in exponents]
        while exps and exps[-1] == 0:
            exps.pop()
        return super().__new__(cls, exps)

    @classmethod
    def _raw(cls, exps):
        # caller guarantees normalized, trimmed exponents
        return tuple.__new__(cls, exps)

    @property
    def exponents(self) -> Tuple[Rational, ...]:
        return tuple(self)

    @property
    def depth(self) -> int:
        return max(len(self) - 1, 0)

    def exponent(self, k: int) -> Rational:
        return self[k] if k < len(self) else 0

    def padded(self, length: int) -> Tuple[Rational, ...]:
        return tuple(self) + (0,) * (length - len(self))

    def __mul__(self, other: "Monomial") -> "Monomial":
        n = max(len(self), len(other))
        a, b = self.padded(n), other.padded(n)
        return Monomial(x + y for x, y in zip(a, b))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        n = max(len(self), len(other))
        a, b = self.padded(n), other.padded(n)
        return Monomial(x - y for x, y in zip(a, b))

    def __pow__(self, q) -> "Monomial":
        q = _exact(q)
        return Monomial(e * q for e in self)

    def _cmp(self, other) -> int:
        n = max(len(self), len(other))
        a, b = self.padded(n), other.padded(n)
        return (a > b) - (a < b)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    __hash__ = tuple.__hash__
    __eq__ = tuple.__eq__
    __ne__ = tuple.__ne__

    def shift_up(self) -> "Monomial":
        return Monomial._raw((0,) + tuple(self)) if self else self

    def __repr__(self):
        return f"Monomial({list(self)!r})"


ONE_MONO = Monomial()


def _lead_key(terms: Mapping[Monomial, Fraction]):
    n = max((len(m) for m in terms), default=0)
    return lambda m: m.padded(n)


class TowerPoly:
    """Finite sum of rational multiples of monomials; zero coefficients are
    never stored."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Rational] = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m if isinstance(m, Monomial) else Monomial(m)] = Fraction(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _from_clean(cls, terms: Dict[Monomial, Fraction]) -> "TowerPoly":
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Rational) -> "TowerPoly":
        return cls({ONE_MONO: c})

    @classmethod
    def mono(cls, m: Monomial, c: Rational = 1) -> "TowerPoly":
        return cls({m: c})

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return isinstance(other, TowerPoly) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get(ONE_MONO) == 1

    def leading(self) -> Tuple[Monomial, Fraction]:
        m = max(self.terms, key=_lead_key(self.terms))
        return m, self.terms[m]

    def sorted_terms(self):
        """Terms in decreasing dominance order."""
        return sorted(self.terms.items(), key=lambda mc: _lead_key(self.terms)(mc[0]), reverse=True)

    @property
    def depth(self) -> int:
        return max((m.depth for m in self.terms), default=0)

    def __neg__(self):
        return TowerPoly._from_clean({m: -c for m, c in self.terms.items()})

    def __add__(self, other: "TowerPoly") -> "TowerPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return TowerPoly._from_clean(out)

    def __sub__(self, other: "TowerPoly") -> "TowerPoly":
        return self + (-other)

    def __mul__(self, other: "TowerPoly") -> "TowerPoly":
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return TowerPoly._from_clean(out)

    def scale(self, c: Rational, m: Monomial = ONE_MONO) -> "TowerPoly":
        if not c:
            return TowerPoly()
        c = Fraction(c)
        if m == ONE_MONO:
            return TowerPoly._from_clean({k: v * c for k, v in self.terms.items()})
        return TowerPoly._from_clean({k * m: v * c for k, v in self.terms.items()})

    def __pow__(self, k: int) -> "TowerPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = TowerPoly.const(1), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def derive(self) -> "TowerPoly":
        # (prod l_k^e_k)' = m * sum_k e_k * gamma_k, gamma_k = 1/(l_0...l_k)
        out: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            for k, e in enumerate(m):
                if not e:
                    continue
                exps = [x - 1 if j <= k else x for j, x in enumerate(m)]
                mk = Monomial(exps)
                s = out.get(mk, 0) + c * e
                if s:
                    out[mk] = s
                else:
                    out.pop(mk, None)
        return TowerPoly._from_clean(out)

    def shift_up(self) -> "TowerPoly":
        return TowerPoly._from_clean({m.shift_up(): c for m, c in self.terms.items()})

    def shift_down(self) -> "TowerPoly":
        out = {}
        for m, c in self.terms.items():
            if m and m[0] != 0:
                raise NotShiftable(f"monomial {render_monomial(m)} involves x")
            out[Monomial._raw(tuple(m)[1:])] = c
        return TowerPoly._from_clean(out)

    def __repr__(self):
        return f"TowerPoly({render_poly(self)!r})"


ZERO_POLY = TowerPoly()
ONE_POLY = TowerPoly.const(1)


@lru_cache(maxsize=None)
def _qq_ring(nvars: int):
    R, *_ = ring([f"t{i}" for i in range(nvars)], QQ)
    return R


def _poly_gcd_reduce(num: TowerPoly, den: TowerPoly) -> Tuple[TowerPoly, TowerPoly]:
    """Cancel the polynomial gcd of ``num`` and ``den``.

    Generalized monomials are mapped to an integer Laurent ring by scaling
    every level by the lcm of its exponent denominators and shifting by the
    minimum exponent; the sparse gcd itself is sympy's.
    """
    allm = list(num.terms) + list(den.terms)
    n = max(len(m) for m in allm)
    if n == 0:
        return num, den
    scale = [1] * n
    for m in allm:
        for k, e in enumerate(m):
            if isinstance(e, Fraction):
                scale[k] = lcm(scale[k], e.denominator)
    low = [min(int(m.exponent(k) * scale[k]) for m in allm) for k in range(n)]

    R = _qq_ring(n)

    def to_ring(p: TowerPoly):
        d = {}
        for m, c in p.terms.items():
            key = tuple(int(m.exponent(k) * scale[k]) - low[k] for k in range(n))
            d[key] = QQ(c.numerator, c.denominator)
        return R.from_dict(d)

    def from_ring(P) -> TowerPoly:
        out = {}
        for key, c in P.items():
            m = Monomial(Fraction(key[k] + low[k], scale[k]) for k in range(n))
            out[m] = Fraction(int(c.numerator), int(c.denominator))
        return TowerPoly._from_clean(out)

    f, g = to_ring(num), to_ring(den)
    try:
        _, a, b = f.cofactors(g)
    except HeuristicGCDFailed:
        # huge coefficients defeat the heuristic; the dense path falls back to PRS
        _, a, b = dmp_inner_gcd(f.to_dense(), g.to_dense(), n - 1, QQ)
        a, b = R.from_dense(a), R.from_dense(b)
    return from_ring(a), from_ring(b)


class Relation(enum.Enum):
    PREC = "≺"
    SUCC = "≻"
    ASYMP = "≍"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Comparison:
    relation: Relation
    asymptotic_equiv: bool
    sign_left: int
    sign_right: int


def _sign(c) -> int:
    return (c > 0) - (c < 0)


class TowerElem:
    """Element ``num/den`` of the tower field in canonical form.

    Canonical form: ``num`` and ``den`` share no nontrivial factor and the
    leading term of ``den`` is exactly ``1``.  Zero is ``0/1``.  The form is
    unique, so ``==`` and ``hash`` are structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: TowerPoly, den: TowerPoly = ONE_POLY, *, _canonical: bool = False):
        if not den:
            raise DivisionByZero("zero denominator")
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # constructors
    @classmethod
    def const(cls, c: Rational) -> "TowerElem":
        return cls(TowerPoly.const(c), ONE_POLY, _canonical=True)

    @classmethod
    def monomial(cls, exponents: Iterable, coeff: Rational = 1) -> "TowerElem":
        return cls(TowerPoly.mono(Monomial(exponents), coeff), ONE_POLY, _canonical=True)

    @classmethod
    def ell(cls, k: int) -> "TowerElem":
        return cls.monomial([0] * k + [1])

    @classmethod
    def coerce(cls, v) -> "TowerElem":
        if isinstance(v, TowerElem):
            return v
        if isinstance(v, (int, Fraction)):
            return cls.const(v)
        raise TypeError(f"cannot coerce {type(v).__name__} to TowerElem")

    # predicates
    def __bool__(self):
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def is_const(self) -> bool:
        return self.den.is_one() and all(m == ONE_MONO for m in self.num.terms)

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError("not a constant")
        return self.num.terms.get(ONE_MONO, Fraction(0))

    def is_monomial(self) -> bool:
        """Single-term fraction ``c * prod l_k^e_k``."""
        return self.den.is_one() and len(self.num) == 1

    @property
    def depth(self) -> int:
        return max(self.num.depth, self.den.depth)

    def leading(self) -> Tuple[Monomial, Fraction]:
        """Leading monomial and coefficient of the germ (den is monic at 1)."""
        if not self.num:
            raise ValueError("zero has no leading term")
        m, c = self.num.leading()
        dm, dc = self.den.leading()
        return m / dm, c / dc

    # equality
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TowerElem.const(other)
        if not isinstance(other, TowerElem):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # arithmetic
    def __neg__(self):
        return TowerElem(-self.num, self.den, _canonical=True)

    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if not other:
            return self
        if not self:
            return other
        if self.den == other.den:
            return TowerElem(self.num + other.num, self.den)
        return TowerElem(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if not self or not other:
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return TowerElem(self.num * other.num, ONE_POLY, _canonical=True)
        return TowerElem(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "TowerElem":
        if not self:
            raise DivisionByZero("inverse of zero")
        return TowerElem(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if not other:
            raise DivisionByZero("division by zero germ")
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, q):
        return pow_(self, q)

    # calculus and asymptotics
    def derive(self) -> "TowerElem":
        return derive(self)

    def sign(self) -> int:
        return sign_at_infinity(self)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"TowerElem({render(self)!r})"


def _coerce_or_none(v):
    if isinstance(v, TowerElem):
        return v
    if isinstance(v, (int, Fraction)):
        return TowerElem.const(v)
    return None


def _canonicalize(num: TowerPoly, den: TowerPoly) -> Tuple[TowerPoly, TowerPoly]:
    if not num:
        return ZERO_POLY, ONE_POLY
    if len(den) > 1 and len(num) > 1:
        num, den = _poly_gcd_reduce(num, den)
    # make den's leading term exactly 1; with a single-term den this leaves den == 1
    dm, dc = den.leading()
    inv_m = ONE_MONO / dm
    inv_c = 1 / dc
    return num.scale(inv_c, inv_m), den.scale(inv_c, inv_m)


ZERO = TowerElem(ZERO_POLY, ONE_POLY, _canonical=True)
ONE = TowerElem(ONE_POLY, ONE_POLY, _canonical=True)
X = TowerElem.ell(0)


# ---------------------------------------------------------------- operations

def add(f: TowerElem, g: TowerElem) -> TowerElem:
    return TowerElem.coerce(f) + TowerElem.coerce(g)


def mul(f: TowerElem, g: TowerElem) -> TowerElem:
    return TowerElem.coerce(f) * TowerElem.coerce(g)


def div(f: TowerElem, g: TowerElem) -> TowerElem:
    return TowerElem.coerce(f) / TowerElem.coerce(g)


def _rational_root(c: Fraction, r: int) -> Fraction:
    a, ok_a = integer_nthroot(c.numerator, r)
    b, ok_b = integer_nthroot(c.denominator, r)
    if not (ok_a and ok_b):
        raise IrrationalCoefficientPower(f"{c} has no rational {r}-th root")
    return Fraction(int(a), int(b))


def pow_(f: TowerElem, q) -> TowerElem:
    """``f**q`` for rational ``q``.

    Integer exponents work for any ``f`` (negative ones need ``f != 0``);
    fractional exponents only for a monomial with positive coefficient.
    """
    f = TowerElem.coerce(f)
    q = Fraction(q)
    if q.denominator == 1:
        k = q.numerator
        if k < 0:
            if not f:
                raise DivisionByZero("negative power of zero")
            f, k = f.inverse(), -k
        # num, den coprime with den monic => powers stay canonical
        return TowerElem(f.num ** k, f.den ** k, _canonical=True)
    if not f.is_monomial():
        raise NonMonomialPower(f"fractional power of non-monomial {render(f)}")
    (m, c), = f.num.terms.items()
    if c <= 0:
        raise NonMonomialPower(f"fractional power needs a positive coefficient, got {c}")
    root = _rational_root(c, q.denominator)
    coeff = root ** q.numerator
    return TowerElem(TowerPoly.mono(m ** q, coeff), ONE_POLY, _canonical=True)


def derive(f: TowerElem) -> TowerElem:
    f = TowerElem.coerce(f)
    if f.den.is_one():
        return TowerElem(f.num.derive(), ONE_POLY, _canonical=True)
    n, d = f.num, f.den
    return TowerElem(n.derive() * d - n * d.derive(), d * d)


def log_derivative(f: TowerElem) -> TowerElem:
    """``f'/f``."""
    if not f:
        raise DivisionByZero("logarithmic derivative of zero")
    return derive(f) / f


def sign_at_infinity(f: TowerElem) -> int:
    f = TowerElem.coerce(f)
    if not f:
        return 0
    return _sign(f.num.leading()[1]) * _sign(f.den.leading()[1])


def compare(f: TowerElem, g: TowerElem) -> Comparison:
    f, g = TowerElem.coerce(f), TowerElem.coerce(g)
    sf, sg = sign_at_infinity(f), sign_at_infinity(g)
    if not f and not g:
        return Comparison(Relation.ASYMP, False, 0, 0)
    if not f:
        return Comparison(Relation.PREC, False, sf, sg)
    if not g:
        return Comparison(Relation.SUCC, False, sf, sg)
    mf, cf = f.leading()
    mg, cg = g.leading()
    c = mf._cmp(mg)
    if c < 0:
        return Comparison(Relation.PREC, False, sf, sg)
    if c > 0:
        return Comparison(Relation.SUCC, False, sf, sg)
    return Comparison(Relation.ASYMP, cf == cg, sf, sg)


def shift_up(f: TowerElem) -> TowerElem:
    """Compose with ``log``: ``l_k -> l_{k+1}``."""
    f = TowerElem.coerce(f)
    return TowerElem(f.num.shift_up(), f.den.shift_up(), _canonical=True)


def shift_down(f: TowerElem) -> TowerElem:
    """Compose with ``exp``: ``l_{k+1} -> l_k``; fails if ``x`` occurs."""
    f = TowerElem.coerce(f)
    return TowerElem(f.num.shift_down(), f.den.shift_down(), _canonical=True)


def log_of(f: TowerElem) -> TowerElem:
    """``log`` of a pure monomial: ``log prod l_k^e_k = sum e_k l_{k+1}``."""
    f = TowerElem.coerce(f)
    if not f.is_monomial() or next(iter(f.num.terms.values())) != 1:
        raise NonMonomialLog(f"log of {render(f)} leaves the tower field")
    (m, _), = f.num.terms.items()
    out = ZERO
    for k, e in enumerate(m):
        if e:
            out = out + TowerElem.ell(k + 1) * e
    return out


# ----------------------------------------------------------------- rendering

def render_rational(c: Rational) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_monomial(m: Monomial) -> str:
    parts = []
    for k, e in enumerate(m):
        if not e:
            continue
        name = "x" if k == 0 else f"l{k}"
        e = Fraction(e)
        if e == 1:
            parts.append(name)
        elif e.denominator == 1:
            parts.append(f"{name}^{e.numerator}")
        else:
            parts.append(f"{name}^({e.numerator}/{e.denominator})")
    return "*".join(parts) if parts else "1"


def _render_term(m: Monomial, c: Fraction, first: bool) -> str:
    neg = c < 0
    a = -c if neg else c
    if m == ONE_MONO:
        body = render_rational(a)
    elif a == 1:
        body = render_monomial(m)
    else:
        body = f"{render_rational(a)}*{render_monomial(m)}"
    if first:
        return f"-{body}" if neg else body
    return f" - {body}" if neg else f" + {body}"


def render_poly(p: TowerPoly) -> str:
    if not p:
        return "0"
    return "".join(_render_term(m, c, i == 0) for i, (m, c) in enumerate(p.sorted_terms()))


def render(f: TowerElem) -> str:
    """Canonical text: ``x`` for ``l0``, rationals as ``p/q``."""
    num = render_poly(f.num)
    if f.den.is_one():
        return num
    if len(f.num) > 1 or num.startswith("-") or "/" in num:
        num = f"({num})"
    return f"{num}/({render_poly(f.den)})"
