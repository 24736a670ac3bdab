"""Hessian of the area objective and stability classification.

The area objective couples only neighbouring radii, so its Hessian is
symmetric tridiagonal. Leading principal minors come from the three-term
determinant recurrence and decide positive definiteness (Sylvester).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError, NotCriticalError
from .profilefn import ProfileFamily, profile_derivative, profile_sequence
from .solver import PtcSurface, fd_gradient

__all__ = [
    "Verdict",
    "HessianTridiag",
    "area_second_partials",
    "tridiagonal_minors",
    "assemble_hessian",
    "extended_hessian",
    "determinant_identity_check",
    "classify_stability",
    "identity_grid",
    "STATIONARITY_GATE",
]

# classify_stability refuses points whose FD gradient exceeds this max-norm.
STATIONARITY_GATE = 1e-6


class Verdict(str, enum.Enum):
    STABLE = "Stable"
    NOT_POSITIVE_DEFINITE = "NotPositiveDefinite"


@dataclass(frozen=True)
class HessianTridiag:
    m: int
    diag: tuple[float, ...]
    offdiag: tuple[float, ...]
    leading_minors: tuple[float, ...]
    extended_corner: float

    def dense(self) -> list[list[float]]:
        out = [[0.0] * self.m for _ in range(self.m)]
        for i, d in enumerate(self.diag):
            out[i][i] = d
        for i, o in enumerate(self.offdiag):
            out[i][i + 1] = out[i + 1][i] = o
        return out


def area_second_partials(s: float, t: float, ell: float) -> tuple[float, float, float]:
    """Second partials ``(S_ss, S_st, S_tt)`` of ``S(s, t) = (s+t) sqrt((t-s)^2 + l^2)``."""
    if not (s > 0 and t > 0 and ell > 0):
        raise DomainError(f"cone radii and height must be positive, got {(s, t, ell)!r}")
    ell2 = ell * ell
    d = t - s
    r3 = (d * d + ell2) ** 1.5
    d2_ss = (-2 * d ** 3 + ell2 * (3 * s - t)) / r3
    d2_st = -ell2 * (s + t) / r3
    d2_tt = (2 * d ** 3 + ell2 * (3 * t - s)) / r3
    return d2_ss, d2_st, d2_tt


def tridiagonal_minors(diag, offdiag) -> list[float]:
    """Leading principal minors ``det A^(1), ..., det A^(m)`` by recurrence."""
    minors = []
    prev2, prev = 1.0, 1.0
    for k, d in enumerate(diag):
        cur = d * prev if k == 0 else d * prev - offdiag[k - 1] ** 2 * prev2
        minors.append(cur)
        prev2, prev = prev, cur
    return minors


def _tridiag_entries(chain, ell):
    """Diagonal and off-diagonal of the Hessian along ``chain = [r_0, ..., r_m]``.

    ``r_m`` is the fixed outer radius; the free variables are ``r_0..r_{m-1}``.
    """
    m = len(chain) - 1
    parts = [area_second_partials(chain[i], chain[i + 1], ell) for i in range(m)]
    diag = [parts[0][0]]
    for i in range(1, m):
        diag.append(parts[i - 1][2] + parts[i][0])
    offdiag = [parts[i][1] for i in range(m - 1)]
    return diag, offdiag, parts


def extended_hessian(family: ProfileFamily, m: int, y: float):
    """Hessian of the objective with the outer radius tied to ``f_m(y)``.

    Returns ``(diag, offdiag, extension)`` where ``extension`` is the mixed
    partial between the last free radius and ``f_m(y)``.
    """
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m!r}")
    chain = profile_sequence(family, m, y)
    diag, offdiag, parts = _tridiag_entries(chain, family.ell)
    return diag, offdiag, parts[m - 1][1]


def assemble_hessian(surface: PtcSurface) -> HessianTridiag:
    chain = list(surface.interior) + [surface.a]
    diag, offdiag, _ = _tridiag_entries(chain, surface.ell)
    ext_diag, _, _ = extended_hessian(surface.family, surface.m, surface.seed)
    return HessianTridiag(
        m=surface.m,
        diag=tuple(diag),
        offdiag=tuple(offdiag),
        leading_minors=tuple(tridiagonal_minors(diag, offdiag)),
        extended_corner=ext_diag[-1],
    )


def identity_grid(family: ProfileFamily, n: int = 20, span: float = 5.0) -> list[float]:
    """Evenly spaced points starting one cone height above the domain bound.

    Closer to the odd-family pole the radii explode and the minor recurrence
    cancels catastrophically, so the identity is only meaningful out here.
    """
    start = family.lower_bound + family.ell
    step = span / (n - 1)
    return [start + k * step for k in range(n)]


def determinant_identity_check(family: ProfileFamily, m: int,
                               y: float) -> tuple[float, float, float]:
    """Compare ``det H_m(y)`` against ``(-1)^m H_12 H_23 ... H_{m,m+1} f_m'(y)``.

    The left side comes from the minor recurrence, the right side from the
    off-diagonal product and the termwise profile derivative.
    """
    diag, offdiag, extension = extended_hessian(family, m, y)
    lhs = tridiagonal_minors(diag, offdiag)[-1]
    rhs = (-1) ** m * math.prod(offdiag) * extension * profile_derivative(family, m, y, 1)
    scale = max(abs(lhs), abs(rhs))
    rel_err = abs(lhs - rhs) / scale if scale > 0 else 0.0
    return lhs, rhs, rel_err


def classify_stability(surface: PtcSurface, fd_step: float = 1e-6) -> Verdict:
    """Sylvester test on the Hessian at a critical point.

    Raises :class:`NotCriticalError` when the radii are not stationary, since
    the Hessian says nothing about stability there.
    """
    grad = fd_gradient(surface.a, surface.m, surface.ell, surface.interior,
                       surface.family.parity, fd_step)
    worst = max(abs(g) for g in grad)
    if worst > STATIONARITY_GATE:
        raise NotCriticalError(f"gradient max-norm {worst:.3e} exceeds {STATIONARITY_GATE}")
    hess = assemble_hessian(surface)
    if all(d > 0 for d in hess.leading_minors):
        return Verdict.STABLE
    return Verdict.NOT_POSITIVE_DEFINITE
