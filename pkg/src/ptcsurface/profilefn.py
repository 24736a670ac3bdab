"""Profile functions of symmetric PTC minimal surfaces.

Two families of rational profiles map the innermost radius of a symmetric
stack of truncated cones to the radius ``n`` cones further out:

* the *even* family ``g_n(x) = x T_n(1 + l^2 / (2 x^2))`` (an even number of
  cones, one shared middle circle), defined for ``x > 0``;
* the *odd* family ``h_n(y) = y V_n(1 + 2 l^2 / (4 y^2 - l^2))`` (an odd number
  of cones, a cylindrical middle band), defined for ``y > l / 2``.

``T_n`` and ``V_n`` are Chebyshev polynomials of the first and third kind.
Each family can be evaluated three ways (Chebyshev recurrence, terminating
Gauss hypergeometric series, closed radical form); they agree to rounding.
"""

from __future__ import annotations

import enum
import math
import numbers
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "Parity",
    "EvalRoute",
    "ProfileFamily",
    "chebyshev_T",
    "chebyshev_V",
    "hypergeometric_terminating",
    "h_profile",
    "g_profile",
    "profile_value",
    "profile_derivative",
    "h_profile_derivative",
    "profile_sequence",
]

# Inputs closer than this (relative to ell) to the odd-family pole are rejected.
POLE_GUARD = 1e-9
# Above this order the radical form is evaluated through logarithms.
LOG_RADICAL_ORDER = 500


class Parity(str, enum.Enum):
    EVEN = "even"
    ODD = "odd"


class EvalRoute(str, enum.Enum):
    HYPERGEOMETRIC = "hypergeometric"
    CHEBYSHEV = "chebyshev"
    RADICAL = "radical"


@dataclass(frozen=True)
class ProfileFamily:
    """A profile family: parity plus the common cone height ``ell``."""

    parity: Parity
    ell: float

    def __post_init__(self):
        object.__setattr__(self, "parity", Parity(self.parity))
        if not (math.isfinite(self.ell) and self.ell > 0):
            raise DomainError(f"ell must be a positive finite number, got {self.ell!r}")

    @classmethod
    def odd(cls, ell: float) -> "ProfileFamily":
        return cls(Parity.ODD, ell)

    @classmethod
    def even(cls, ell: float) -> "ProfileFamily":
        return cls(Parity.EVEN, ell)

    @property
    def lower_bound(self) -> float:
        """Infimum of the open domain (``ell/2`` for odd, ``0`` for even)."""
        return self.ell / 2 if self.parity is Parity.ODD else 0.0

    def check_domain(self, r: float) -> None:
        if not math.isfinite(r):
            raise DomainError(f"argument must be finite, got {r!r}")
        if self.parity is Parity.ODD:
            if r - self.ell / 2 < POLE_GUARD * self.ell:
                raise DomainError(
                    f"odd profile needs y > ell/2 = {self.ell / 2!r}, got {r!r}"
                )
        elif r <= 0:
            raise DomainError(f"even profile needs x > 0, got {r!r}")

    def __call__(self, n: int, r: float, route: EvalRoute = EvalRoute.CHEBYSHEV) -> float:
        return profile_value(self, n, r, route)

    def derivative(self, n: int, r: float, order: int = 1) -> float:
        return profile_derivative(self, n, r, order)


def chebyshev_T(n: int, x: float) -> float:
    """Chebyshev polynomial of the first kind, by three-term recurrence."""
    _check_order(n)
    if n == 0:
        return 1.0
    prev, cur = 1.0, float(x)
    for _ in range(n - 1):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur


def chebyshev_V(n: int, x: float) -> float:
    """Chebyshev polynomial of the third kind.

    Same recurrence as ``T_n`` but started from ``V_0 = 1``, ``V_1 = 2x - 1``.
    """
    _check_order(n)
    if n == 0:
        return 1.0
    prev, cur = 1.0, 2.0 * x - 1.0
    for _ in range(n - 1):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur


def hypergeometric_terminating(p: float, n: int, c: float, z: float) -> float:
    """Evaluate ``2F1(p, -n; c; z)``, which is a polynomial of degree ``n`` in z.

    Terms are built from the ratio of consecutive terms, so no factorial or
    Pochhammer symbol is ever formed explicitly.
    """
    _check_order(n)
    term = 1.0
    total = 1.0
    for i in range(n):
        denom = (c + i) * (i + 1)
        if denom == 0:
            raise DomainError(f"(c)_i vanishes: c={c!r} is a nonpositive integer")
        term *= (p + i) * (i - n) / denom * z
        total += term
    return total


def h_profile(family: ProfileFamily, n: int, y: float,
              route: EvalRoute = EvalRoute.CHEBYSHEV) -> float:
    """Odd-family profile ``h_{n,ell}(y)``."""
    if family.parity is not Parity.ODD:
        raise DomainError("h_profile needs an odd family")
    return profile_value(family, n, y, route)


def g_profile(family: ProfileFamily, n: int, x: float,
              route: EvalRoute = EvalRoute.CHEBYSHEV) -> float:
    """Even-family profile ``g_{n,ell}(x)``."""
    if family.parity is not Parity.EVEN:
        raise DomainError("g_profile needs an even family")
    return profile_value(family, n, x, route)


def profile_value(family: ProfileFamily, n: int, r: float,
                  route: EvalRoute = EvalRoute.CHEBYSHEV) -> float:
    _check_order(n)
    family.check_domain(r)
    route = EvalRoute(route)
    ell = family.ell
    if family.parity is Parity.ODD:
        q, p = 2 * r - ell, 2 * r + ell
        if route is EvalRoute.CHEBYSHEV:
            return r * chebyshev_V(n, 1 + 2 * ell * ell / (p * q))
        if route is EvalRoute.HYPERGEOMETRIC:
            return r * hypergeometric_terminating(n + 1, n, 0.5, -ell * ell / (p * q))
        return _odd_radical(n, p, q)

    if route is EvalRoute.CHEBYSHEV:
        return r * chebyshev_T(n, 1 + ell * ell / (2 * r * r))
    if route is EvalRoute.HYPERGEOMETRIC:
        return r * hypergeometric_terminating(n, n, 0.5, -ell * ell / (4 * r * r))
    return _even_radical(n, r, ell)


def _odd_radical(n, p, q):
    # ((2y+l)^(2n+1) + (2y-l)^(2n+1)) / (4 (4y^2-l^2)^n), rescaled by q^n p^n
    if n <= LOG_RADICAL_ORDER:
        try:
            return (p * (p / q) ** n + q * (q / p) ** n) / 4
        except OverflowError:
            return math.inf
    log_ratio = math.log(p / q)
    log_mag = math.log(p / 4) + n * log_ratio
    if log_mag > 709.0:
        return math.inf
    return math.exp(log_mag) * (1.0 + math.exp(-(2 * n + 1) * log_ratio))


def _even_radical(n, x, ell):
    # (x/2) (P^(2n) + Q^(2n)) with P = sqrt(1+u^2)+u and Q = 1/P
    u = ell / (2 * x)
    big = math.hypot(1.0, u) + u
    if n <= LOG_RADICAL_ORDER:
        try:
            return x / 2 * (big ** (2 * n) + (1.0 / big) ** (2 * n))
        except OverflowError:
            return math.inf
    log_big = math.log(big)
    log_mag = math.log(x / 2) + 2 * n * log_big
    if log_mag > 709.0:
        return math.inf
    return math.exp(log_mag) * (1.0 + math.exp(-4 * n * log_big))


def profile_derivative(family: ProfileFamily, n: int, r: float, order: int = 1) -> float:
    """First or second derivative of a profile, summed term by term.

    Both families expand as ``sum_i k_i r w(r)^i``; each term is differentiated
    in closed form. For the odd family ``w = l^2 / (4 r^2 - l^2)``; for the even
    family ``w = l^2 / (4 r^2)``.
    """
    _check_order(n)
    if order not in (1, 2):
        raise DomainError(f"derivative order must be 1 or 2, got {order!r}")
    family.check_domain(r)
    ell2 = family.ell * family.ell
    total = 0.0
    coef = 1.0
    if family.parity is Parity.ODD:
        denom = (2 * r - family.ell) * (2 * r + family.ell)
        w = ell2 / denom
        for i in range(n + 1):
            if order == 1:
                total += coef * ((4 - 8 * i) * r * r - ell2) / denom
            else:
                total += coef * 8 * i * r * ((8 * i - 4) * r * r + 3 * ell2) / (denom * denom)
            # k_{i+1}/k_i with k_i = (n+1)_i / (1/2)_i * C(n, i)
            coef *= (n + 1 + i) / (0.5 + i) * (n - i) / (i + 1) * w
        return total

    w = ell2 / (4 * r * r)
    for i in range(n + 1):
        if order == 1:
            total += coef * (1 - 2 * i)
        else:
            total += coef * (1 - 2 * i) * (-2 * i) / r
        # k_{i+1}/k_i with k_i = (n)_i / (1/2)_i * C(n, i)
        coef *= (n + i) / (0.5 + i) * (n - i) / (i + 1) * w
    return total


def h_profile_derivative(family: ProfileFamily, n: int, y: float, order: int = 1) -> float:
    """Derivative of ``h_{n,ell}`` (or ``g_{n,ell}`` for an even family)."""
    return profile_derivative(family, n, y, order)


def profile_sequence(family: ProfileFamily, n_max: int, r: float) -> list[float]:
    """Return ``[f_0(r), ..., f_{n_max}(r)]`` in one pass of the recurrence."""
    _check_order(n_max)
    family.check_domain(r)
    ell = family.ell
    if family.parity is Parity.ODD:
        x = 1 + 2 * ell * ell / ((2 * r - ell) * (2 * r + ell))
        first = 2 * x - 1
    else:
        x = 1 + ell * ell / (2 * r * r)
        first = x
    out = [1.0, first]
    for _ in range(n_max - 1):
        out.append(2 * x * out[-1] - out[-2])
    return [r * v for v in out[: n_max + 1]]


def _check_order(n):
    if isinstance(n, bool) or not isinstance(n, numbers.Integral) or n < 0:
        raise DomainError(f"order must be a nonnegative integer, got {n!r}")
