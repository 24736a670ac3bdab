"""Minima, boundary branches and full symmetric PTC surfaces.

A symmetric surface with boundary radius ``a`` on both ends is fixed by its
innermost radius ``r``: the remaining interior radii are ``f_1(r), ...,
f_{m-1}(r)`` and ``r`` must solve ``f_m(r) = a``, where ``f`` is the even or
odd profile. Profiles are convex with a single minimum ``(mu, nu)``, so the
boundary equation has a root on each side of ``mu`` whenever ``a > nu``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

from scipy.optimize import bisect

from .errors import BracketError, DegenerateDouble, DomainError, NoSolution
from .profilefn import POLE_GUARD, Parity, ProfileFamily, profile_derivative, profile_sequence, profile_value

__all__ = [
    "Branch",
    "SolverConfig",
    "BranchPair",
    "PtcSurface",
    "cone_area_element",
    "objective_T",
    "objective_gradient",
    "fd_gradient",
    "find_minimum",
    "solve_branches",
    "build_surface",
    "default_ell",
]

_EPS = 2.220446049250313e-16
# |a - nu| within this band (scaled by max(1, a)) is a double root.
DEGENERATE_BAND = 1e-10


class Branch(str, enum.Enum):
    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True)
class SolverConfig:
    root_tol: float = 1e-12
    max_expand: int = 200
    fd_step: float = 1e-6

    def __post_init__(self):
        if not self.root_tol > 0:
            raise DomainError(f"root_tol must be positive, got {self.root_tol!r}")
        if self.max_expand < 1:
            raise DomainError(f"max_expand must be >= 1, got {self.max_expand!r}")
        if not self.fd_step > 0:
            raise DomainError(f"fd_step must be positive, got {self.fd_step!r}")


DEFAULT_CONFIG = SolverConfig()


@dataclass(frozen=True)
class BranchPair:
    """Both roots of ``f_m(r) = a`` together with the profile minimum."""

    family: ProfileFamily
    m: int
    a: float
    mu: float
    nu: float
    y_minus: float
    y_plus: float

    def seed(self, branch: Branch) -> float:
        return self.y_plus if Branch(branch) is Branch.PLUS else self.y_minus


@dataclass(frozen=True)
class PtcSurface:
    """A symmetric PTC surface, stored as its full palindromic radius list."""

    family: ProfileFamily
    m: int
    a: float
    branch: Branch
    radii: tuple[float, ...]
    area_over_pi: float
    pair: BranchPair | None = field(default=None, compare=False)

    @property
    def ell(self) -> float:
        return self.family.ell

    @property
    def interior(self) -> tuple[float, ...]:
        """Free radii ordered outward: ``(r_0, r_1, ..., r_{m-1})``."""
        return tuple(reversed(self.radii[1 : self.m + 1]))

    @property
    def seed(self) -> float:
        return self.radii[self.m]

    @property
    def n_cones(self) -> int:
        return len(self.radii) - 1


def default_ell(parity: Parity, m: int) -> float:
    """Cone height that makes the surface span ``t in [-1, 1]``."""
    return 2.0 / (2 * m + 1) if Parity(parity) is Parity.ODD else 1.0 / m


def cone_area_element(s: float, t: float, ell: float) -> float:
    """Lateral area of a truncated cone divided by pi."""
    if not (s > 0 and t > 0 and ell > 0):
        raise DomainError(f"cone radii and height must be positive, got {(s, t, ell)!r}")
    return (s + t) * math.hypot(t - s, ell)


def objective_T(a: float, m: int, ell: float, ys: Sequence[float],
                parity: Parity = Parity.ODD) -> float:
    """Half the surface area over pi, as a function of the free radii.

    ``ys`` runs outward from the middle. For the odd family the middle
    cylinder contributes ``ys[0] * ell``; for the even family the middle
    circle is shared, so nothing extra is added.
    """
    _check_objective_args(a, m, ell, ys)
    total = ys[0] * ell if Parity(parity) is Parity.ODD else 0.0
    for i in range(1, m):
        total += cone_area_element(ys[i - 1], ys[i], ell)
    return total + cone_area_element(ys[m - 1], a, ell)


def _dS_ds(s, t, ell):
    return (2 * s * s - 2 * t * s + ell * ell) / math.hypot(t - s, ell)


def objective_gradient(a: float, m: int, ell: float, ys: Sequence[float],
                       parity: Parity = Parity.ODD) -> list[float]:
    """Analytic gradient of :func:`objective_T`."""
    _check_objective_args(a, m, ell, ys)
    pts = list(ys) + [a]
    grad = []
    for i in range(m):
        g = _dS_ds(pts[i], pts[i + 1], ell)
        if i == 0:
            if Parity(parity) is Parity.ODD:
                g += ell
        else:
            g += _dS_ds(pts[i], pts[i - 1], ell)  # dS/dt(s,t) = dS/ds(t,s)
        grad.append(g)
    return grad


def fd_gradient(a: float, m: int, ell: float, ys: Sequence[float],
                parity: Parity = Parity.ODD, step: float = 1e-6) -> list[float]:
    """Central finite-difference gradient of :func:`objective_T`."""
    ys = list(ys)
    grad = []
    for i in range(m):
        h = step * max(1.0, abs(ys[i]))
        up = ys.copy()
        dn = ys.copy()
        up[i] += h
        dn[i] -= h
        grad.append((objective_T(a, m, ell, up, parity)
                     - objective_T(a, m, ell, dn, parity)) / (2 * h))
    return grad


def _check_objective_args(a, m, ell, ys):
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m!r}")
    if len(ys) != m:
        raise DomainError(f"expected {m} radii, got {len(ys)}")
    if not (a > 0 and ell > 0) or any(not y > 0 for y in ys):
        raise DomainError("a, ell and all radii must be positive")


def _bisect(f, lo, hi, tol):
    return bisect(f, lo, hi, xtol=tol, rtol=4 * _EPS, maxiter=2000)


def _toward_bound(family, x, what, cfg, keep_going):
    """Halve the gap between ``x`` and the domain bound while ``keep_going``."""
    lb = family.lower_bound
    guard = POLE_GUARD * family.ell if family.parity is Parity.ODD else 0.0
    for _ in range(cfg.max_expand):
        x = lb + (x - lb) / 2
        if x - lb <= guard:
            break
        if not keep_going(x):
            return x
    raise BracketError(f"could not bracket {what} below {x!r}")


def _away_from_bound(family, x, what, cfg, keep_going):
    lb = family.lower_bound
    for _ in range(cfg.max_expand):
        x = lb + 2 * (x - lb)
        if not keep_going(x):
            return x
    raise BracketError(f"could not bracket {what} above {x!r}")


def find_minimum(family: ProfileFamily, m: int,
                 cfg: SolverConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """Return ``(mu, nu)``, the argmin and minimum of the order-``m`` profile.

    The derivative is strictly increasing, so its single sign change is
    bracketed by expanding away from and toward the domain bound, then
    bisected.
    """
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m!r}")

    def slope(r):
        return profile_derivative(family, m, r, 1)

    lb = family.lower_bound
    start = lb + max(family.ell, 1.0)
    if slope(start) > 0:
        hi = start
        lo = _toward_bound(family, start, "the minimum", cfg, lambda r: slope(r) >= 0)
    else:
        lo = start
        hi = _away_from_bound(family, start, "the minimum", cfg, lambda r: slope(r) <= 0)
    mu = _bisect(slope, lo, hi, cfg.root_tol)
    return mu, profile_value(family, m, mu)


def solve_branches(family: ProfileFamily, m: int, a: float,
                   cfg: SolverConfig = DEFAULT_CONFIG) -> BranchPair:
    """Solve ``f_m(r) = a`` for both roots.

    Raises :class:`NoSolution` when ``a`` is below the profile minimum and
    :class:`DegenerateDouble` when it coincides with it.
    """
    if not (math.isfinite(a) and a > 0):
        raise DomainError(f"a must be a positive finite number, got {a!r}")
    mu, nu = find_minimum(family, m, cfg)
    band = DEGENERATE_BAND * max(1.0, a)
    if abs(a - nu) <= band:
        raise DegenerateDouble(a, nu, mu)
    if a < nu:
        raise NoSolution(a, nu)

    def excess(r):
        return profile_value(family, m, r) - a

    hi = _away_from_bound(family, mu, "the plus root", cfg, lambda r: excess(r) <= 0)
    y_plus = _bisect(excess, mu, hi, cfg.root_tol)
    lo = _toward_bound(family, mu, "the minus root", cfg, lambda r: excess(r) <= 0)
    y_minus = _bisect(excess, lo, mu, cfg.root_tol)
    return BranchPair(family, m, a, mu, nu, y_minus, y_plus)


def build_surface(family: ProfileFamily, m: int, a: float, branch: Branch,
                  cfg: SolverConfig = DEFAULT_CONFIG,
                  pair: BranchPair | None = None) -> PtcSurface:
    """Assemble the symmetric PTC minimal surface on the requested branch."""
    branch = Branch(branch)
    a = float(a)
    if pair is None:
        pair = solve_branches(family, m, a, cfg)
    interior = profile_sequence(family, m - 1, pair.seed(branch))
    outer = list(reversed(interior))
    if family.parity is Parity.ODD:
        radii = [a] + outer + interior + [a]
    else:
        radii = [a] + outer + interior[1:] + [a]
    area = sum(cone_area_element(s, t, family.ell) for s, t in zip(radii, radii[1:]))
    return PtcSurface(family, m, a, branch, tuple(radii), area, pair)
