"""The iterated-logarithm scale and the Riccati maps attached to it.

    gamma_n  = l_n'/l_n              = 1/(l_0 ... l_n)
    lambda_n = -gamma_n'/gamma_n     = gamma_0 + ... + gamma_n
    omega_n  = omega(lambda_n)       = gamma_0^2 + ... + gamma_n^2
    sigma(gamma_n)                   = omega_n + gamma_n^2

with ``omega(z) = -2z' - z^2`` and ``sigma(y) = omega(-y'/y) + y^2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DivisionByZero, NotEventuallyPositive
from .tower import TowerElem, ZERO, derive, log_derivative, sign_at_infinity


def _check_index(n: int) -> None:
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")


@lru_cache(maxsize=None)
def ell(n: int) -> TowerElem:
    _check_index(n)
    return TowerElem.ell(n)


@lru_cache(maxsize=None)
def gamma(n: int) -> TowerElem:
    _check_index(n)
    return TowerElem.monomial([-1] * (n + 1))


@lru_cache(maxsize=None)
def lambda_(n: int) -> TowerElem:
    _check_index(n)
    prev = lambda_(n - 1) if n else ZERO
    return prev + gamma(n)


@lru_cache(maxsize=None)
def omega_seq(n: int) -> TowerElem:
    _check_index(n)
    prev = omega_seq(n - 1) if n else ZERO
    return prev + gamma(n) ** 2


@lru_cache(maxsize=None)
def sigma_gamma(n: int) -> TowerElem:
    return omega_seq(n) + gamma(n) ** 2


def omega_map(z: TowerElem) -> TowerElem:
    z = TowerElem.coerce(z)
    return -2 * derive(z) - z * z


def sigma_map(y: TowerElem) -> TowerElem:
    y = TowerElem.coerce(y)
    if not y:
        raise DivisionByZero("sigma is undefined at 0")
    return omega_map(-log_derivative(y)) + y * y


def riccati_check(z: TowerElem, f: TowerElem) -> bool:
    """True iff ``z' + z^2 + f == 0`` exactly (``z = y'/y`` for ``y'' + f y = 0``)."""
    z, f = TowerElem.coerce(z), TowerElem.coerce(f)
    return not (derive(z) + z * z + f)


def riccati_residual(z: TowerElem, f: TowerElem) -> TowerElem:
    z, f = TowerElem.coerce(z), TowerElem.coerce(f)
    return derive(z) + z * z + f


def integral_diverges(u: TowerElem) -> bool:
    """Whether an antiderivative of the eventually positive germ ``u`` is
    unbounded.

    Only the leading monomial matters: ``int prod l_k^e_k`` diverges iff the
    exponent vector is lexicographically >= ``(-1, ..., -1)``.
    """
    u = TowerElem.coerce(u)
    if sign_at_infinity(u) != 1:
        raise NotEventuallyPositive(f"{u} is not eventually positive")
    m, _ = u.leading()
    d = max(len(m), 1)
    return m.padded(d) >= (-1,) * d


@dataclass(frozen=True)
class SequenceTable:
    n: int
    ell: TowerElem
    gamma: TowerElem
    lambda_: TowerElem
    omega: TowerElem
    sigma_gamma: TowerElem

    def check(self) -> bool:
        """Re-derive every column from ``ell`` alone."""
        g = log_derivative(self.ell)
        lam = -log_derivative(g)
        w = omega_map(lam)
        return (g == self.gamma and lam == self.lambda_ and w == self.omega
                and w + g * g == self.sigma_gamma)


def sequence_table(n: int) -> SequenceTable:
    return SequenceTable(n, ell(n), gamma(n), lambda_(n), omega_seq(n), sigma_gamma(n))
