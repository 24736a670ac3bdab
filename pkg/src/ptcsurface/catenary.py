"""Reference catenaries and polyline-versus-catenary error reports.

The catenary ``C_c(t) = c cosh(t/c)`` passes through ``(+-1, a)`` when
``c cosh(1/c) = a``. That map is convex in ``c`` with minimum ``eta_inf`` at
``xi_inf``, so for ``a > eta_inf`` there are two catenaries, ``c_minus <
xi_inf < c_plus``. PTC minimal surfaces built with cone height
``2/(2m+1)`` (odd) or ``1/m`` (even) span ``t in [-1, 1]``; their profile
polylines converge to these catenaries.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from scipy.optimize import bisect

from .errors import DegenerateDouble, DomainError, NoSolution
from .profilefn import Parity, ProfileFamily, profile_value
from .solver import (
    DEFAULT_CONFIG,
    DEGENERATE_BAND,
    Branch,
    PtcSurface,
    SolverConfig,
    build_surface,
    default_ell,
    find_minimum,
)

__all__ = [
    "CatenaryParams",
    "CatenaryFit",
    "catenary_constants",
    "boundary_map",
    "solve_catenary_boundary",
    "catenary_eval",
    "polyline_abscissae",
    "build_polyline",
    "edge_sup_error",
    "lemma_5_1_gap",
    "verify_lemma_5_1",
    "verify_profile_limit",
]


@dataclass(frozen=True)
class CatenaryParams:
    c: float
    a: float
    branch: Branch


@dataclass(frozen=True)
class CatenaryFit:
    m: int
    family: ProfileFamily
    branch: Branch
    vertices: tuple[tuple[float, float], ...]
    reference: CatenaryParams
    per_vertex_error: tuple[float, ...]
    max_abs_error: float
    surface: PtcSurface | None = None


def boundary_map(c: float) -> float:
    """``c cosh(1/c)``; returns ``inf`` where cosh overflows."""
    if 1.0 / c > 700.0:
        return math.inf
    return c * math.cosh(1.0 / c)


@functools.lru_cache(maxsize=None)
def catenary_constants() -> tuple[float, float]:
    """Return ``(xi_inf, eta_inf)``, the argmin and minimum of ``c cosh(1/c)``.

    The derivative ``cosh(1/c) - sinh(1/c)/c`` is bisected to machine
    precision rather than hard-coding printed decimals.
    """
    def slope(c):
        u = 1.0 / c
        return math.cosh(u) - u * math.sinh(u)

    lo, hi = 0.5, 2.0
    while slope(lo) >= 0:
        lo /= 2
    while slope(hi) <= 0:
        hi *= 2
    xi = bisect(slope, lo, hi, xtol=1e-16, rtol=4 * 2.220446049250313e-16, maxiter=500)
    return xi, boundary_map(xi)


def solve_catenary_boundary(a: float, tol: float = 1e-15) -> tuple[float, float]:
    """Both solutions ``(c_minus, c_plus)`` of ``c cosh(1/c) = a``.

    Roots are bisected to near machine precision so that the residual in
    ``a`` stays below 1e-12 even where the map is steep (small ``c``).
    """
    if not (math.isfinite(a) and a > 0):
        raise DomainError(f"a must be a positive finite number, got {a!r}")
    xi, eta = catenary_constants()
    if abs(a - eta) <= DEGENERATE_BAND * max(1.0, a):
        raise DegenerateDouble(a, eta, xi)
    if a < eta:
        raise NoSolution(a, eta, "eta_inf")

    def excess(c):
        return boundary_map(c) - a

    lo = xi
    while excess(lo) <= 0:
        lo /= 2
    hi = xi
    while excess(hi) <= 0:
        hi *= 2
    rtol = 4 * 2.220446049250313e-16
    c_minus = bisect(excess, lo, xi, xtol=tol, rtol=rtol, maxiter=2000)
    c_plus = bisect(excess, xi, hi, xtol=tol, rtol=rtol, maxiter=2000)
    return c_minus, c_plus


def catenary_eval(params: CatenaryParams | float, t: float) -> float:
    c = params.c if isinstance(params, CatenaryParams) else params
    return c * math.cosh(t / c)


def polyline_abscissae(parity: Parity, m: int) -> list[float]:
    """Vertex abscissae of the catenary-approximating polyline, left to right."""
    if Parity(parity) is Parity.ODD:
        inner = [(2 * k - 1) / (2 * m + 1) for k in range(1, m + 1)]
        right = inner + [1.0]
        return [-t for t in reversed(right)] + right
    right = [k / m for k in range(1, m)] + [1.0]
    return [-t for t in reversed(right)] + [0.0] + right


def build_polyline(parity: Parity, m: int, a: float, branch: Branch,
                   cfg: SolverConfig = DEFAULT_CONFIG) -> CatenaryFit:
    """Polyline of the PTC surface profile against the matching catenary.

    The cone height is fixed to ``2/(2m+1)`` (odd) or ``1/m`` (even) so the
    surface spans ``t in [-1, 1]``. Errors are signed, ``r - C(t)``, at the
    polyline's own vertices.
    """
    parity = Parity(parity)
    branch = Branch(branch)
    family = ProfileFamily(parity, default_ell(parity, m))
    surface = build_surface(family, m, a, branch, cfg)
    c_minus, c_plus = solve_catenary_boundary(a)
    ref = CatenaryParams(c_plus if branch is Branch.PLUS else c_minus, a, branch)
    ts = polyline_abscissae(parity, m)
    # end vertices are pinned to (+-1, a) exactly
    vertices = tuple(zip(ts, surface.radii))
    errors = tuple(r - catenary_eval(ref, t) for t, r in vertices)
    return CatenaryFit(
        m=m,
        family=family,
        branch=branch,
        vertices=vertices,
        reference=ref,
        per_vertex_error=errors,
        max_abs_error=max(abs(e) for e in errors),
        surface=surface,
    )


def edge_sup_error(fit: CatenaryFit, samples_per_edge: int = 64) -> float:
    """Sup-norm distance between the polyline edges and the catenary, sampled."""
    worst = 0.0
    for (t0, r0), (t1, r1) in zip(fit.vertices, fit.vertices[1:]):
        for k in range(samples_per_edge + 1):
            s = k / samples_per_edge
            t = t0 + s * (t1 - t0)
            worst = max(worst, abs(r0 + s * (r1 - r0) - catenary_eval(fit.reference, t)))
    return worst


def lemma_5_1_gap(m: int, cfg: SolverConfig = DEFAULT_CONFIG) -> float:
    """``eta_inf - nu_m`` for the odd profile with cone height ``2/(2m+1)``."""
    _, eta = catenary_constants()
    _, nu = find_minimum(ProfileFamily.odd(default_ell(Parity.ODD, m)), m, cfg)
    return eta - nu


def verify_lemma_5_1(m: int, grid: Iterable[float],
                     cfg: SolverConfig = DEFAULT_CONFIG) -> bool:
    """Check ``y cosh(1/y) > h_m(y)`` on ``grid`` and ``eta_inf > nu_m``.

    ``h_m`` is the odd profile with cone height ``2/(2m+1)``; grid points
    must be at least ``1/sqrt(2)``.
    """
    family = ProfileFamily.odd(default_ell(Parity.ODD, m))
    floor = 1 / math.sqrt(2)
    for y in grid:
        if y < floor * (1 - 1e-15):
            raise DomainError(f"grid points must be >= 1/sqrt(2), got {y!r}")
        if not boundary_map(y) - profile_value(family, m, y) > 0:
            return False
    return lemma_5_1_gap(m, cfg) > 0


def verify_profile_limit(t: Fraction | int | float, x: float, m_list: Sequence[int],
                         parity: Parity = Parity.EVEN) -> list[float]:
    """Distances ``|f_{n}(x) - x cosh(t/x)|`` with ``n = t m``, for each m.

    The even family uses cone height ``1/m``, the odd family ``2/(2m+1)``.
    """
    if not x > 0:
        raise DomainError(f"x must be positive, got {x!r}")
    parity = Parity(parity)
    t = Fraction(t).limit_denominator(10**6) if isinstance(t, float) else Fraction(t)
    target = x * math.cosh(float(t) / x)
    out = []
    for m in m_list:
        n = t * m
        if n.denominator != 1:
            raise DomainError(f"t*m = {n} is not an integer for m={m}")
        family = ProfileFamily(parity, default_ell(parity, m))
        out.append(abs(profile_value(family, int(n), x) - target))
    return out
