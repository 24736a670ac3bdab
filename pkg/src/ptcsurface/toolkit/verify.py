"""Batch numerical checks behind ``ptcsurface verify``."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..catenary import lemma_5_1_gap, solve_catenary_boundary, verify_lemma_5_1, verify_profile_limit
from ..profilefn import Parity, ProfileFamily
from ..stability import determinant_identity_check, identity_grid

CHECKS = ("det-identity", "lemma51", "profile-limit")
DET_IDENTITY_TOL = 1e-9
IDENTITY_ELLS = (2 / 3, 2 / 7, 0.1)


def check_det_identity(m_max: int) -> dict:
    worst = 0.0
    cases = 0
    for parity in Parity:
        for ell in IDENTITY_ELLS:
            family = ProfileFamily(parity, ell)
            grid = identity_grid(family)
            for m in range(1, m_max + 1):
                for y in grid:
                    worst = max(worst, determinant_identity_check(family, m, y)[2])
                    cases += 1
    return {
        "name": "det-identity",
        "passed": worst < DET_IDENTITY_TOL,
        "max_rel_err": worst,
        "tolerance": DET_IDENTITY_TOL,
        "cases": cases,
    }


def lemma51_grid(n: int = 100, top: float = 10.0) -> list[float]:
    return np.linspace(1 / math.sqrt(2), top, n).tolist()


def check_lemma51(m_max: int) -> dict:
    grid = lemma51_grid()
    results = {m: verify_lemma_5_1(m, grid) for m in range(1, m_max + 1)}
    gaps = {str(m): lemma_5_1_gap(m) for m in range(1, m_max + 1)}
    return {
        "name": "lemma51",
        "passed": all(results.values()),
        "gaps": gaps,
        "failed_m": [m for m, ok in results.items() if not ok],
    }


def check_profile_limit(m_list: list[int], a: float = 2.0) -> dict:
    """Profile limits at both catenary parameters for ``a``, t in {1/2, 1}."""
    xs = solve_catenary_boundary(a)
    series = []
    passed = True
    for parity in Parity:
        for t in (Fraction(1, 2), Fraction(1)):
            for x in xs:
                if any((t * m).denominator != 1 for m in m_list):
                    continue
                errs = verify_profile_limit(t, x, m_list, parity)
                decreasing = all(e1 < e0 for e0, e1 in zip(errs, errs[1:]))
                small = not (m_list[-1] >= 100 and errs[-1] >= 1e-3)
                passed &= decreasing and small
                series.append({
                    "parity": parity.value,
                    "t": str(t),
                    "x": x,
                    "errors": errs,
                    "decreasing": decreasing,
                })
    return {"name": "profile-limit", "passed": passed, "m": list(m_list), "series": series}


def run_checks(checks, m_max: int = 8, m_list=(10, 100, 1000)) -> dict:
    out = []
    for name in checks:
        if name == "det-identity":
            out.append(check_det_identity(m_max))
        elif name == "lemma51":
            out.append(check_lemma51(m_max))
        elif name == "profile-limit":
            out.append(check_profile_limit(list(m_list)))
        else:
            raise ValueError(f"unknown check {name!r}")
    return {"checks": out, "passed": all(c["passed"] for c in out)}
