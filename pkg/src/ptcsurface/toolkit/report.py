"""Run reports: one solved surface with its stability and catenary fit."""

from __future__ import annotations

import csv
import datetime as _dt
import io
import json
import os
from dataclasses import asdict, dataclass
from typing import Any

from .. import __version__
from ..catenary import build_polyline, catenary_eval
from ..errors import DegenerateDouble, NoSolution
from ..profilefn import Parity, ProfileFamily
from ..solver import Branch, SolverConfig, build_surface, default_ell, solve_branches
from ..stability import assemble_hessian, classify_stability

CSV_HEADER = ("m", "branch", "vertex", "t", "polyline_r", "catenary_r", "error")


@dataclass
class RunReport:
    inputs: dict[str, Any]
    branch_pair: dict[str, float]
    surface: dict[str, Any]
    stability: dict[str, Any]
    fit: dict[str, Any] | None
    meta: dict[str, Any]

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunReport":
        return cls(**{k: data[k] for k in
                      ("inputs", "branch_pair", "surface", "stability", "fit", "meta")})

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls.from_dict(json.loads(text))


def provenance() -> dict[str, Any]:
    """Version plus a timestamp taken only from ``SOURCE_DATE_EPOCH``.

    The wall clock is never read, so identical inputs give identical bytes.
    """
    stamp = os.environ.get("SOURCE_DATE_EPOCH")
    if stamp is not None:
        stamp = _dt.datetime.fromtimestamp(int(stamp), _dt.timezone.utc).isoformat()
    return {"version": __version__, "timestamp": stamp}


def fmt(x: float) -> str:
    return format(x, ".17g")


def run_solve(parity: Parity, m: int, a: float, branch: Branch,
              ell: float | None = None, cfg: SolverConfig = SolverConfig()) -> RunReport:
    """Solve, build, classify and (when ``ell`` is the default) fit a catenary."""
    parity = Parity(parity)
    branch = Branch(branch)
    ell_default = default_ell(parity, m)
    family = ProfileFamily(parity, ell_default if ell is None else ell)
    pair = solve_branches(family, m, a, cfg)
    surface = build_surface(family, m, a, branch, cfg, pair=pair)
    hess = assemble_hessian(surface)
    verdict = classify_stability(surface, cfg.fd_step)

    fit = None
    if family.ell == ell_default:
        try:
            polyline = build_polyline(parity, m, a, branch, cfg)
        except (NoSolution, DegenerateDouble):
            polyline = None  # a is below eta_inf: no reference catenary
        if polyline is not None:
            fit = {
                "c": polyline.reference.c,
                "vertices": [list(v) for v in polyline.vertices],
                "errors": list(polyline.per_vertex_error),
                "max_abs_error": polyline.max_abs_error,
            }

    return RunReport(
        inputs={
            "parity": parity.value,
            "m": m,
            "a": float(a),
            "ell": family.ell,
            "branch": branch.value,
            "root_tol": cfg.root_tol,
            "max_expand": cfg.max_expand,
            "fd_step": cfg.fd_step,
        },
        branch_pair={
            "mu": pair.mu,
            "nu": pair.nu,
            "y_minus": pair.y_minus,
            "y_plus": pair.y_plus,
        },
        surface={
            "radii": list(surface.radii),
            "area_over_pi": surface.area_over_pi,
        },
        stability={
            "verdict": verdict.value,
            "leading_minors": list(hess.leading_minors),
            "diag": list(hess.diag),
            "offdiag": list(hess.offdiag),
        },
        fit=fit,
        meta=provenance(),
    )


def table_rows(parity: Parity, a: float, m_max: int, m_min: int = 1,
               cfg: SolverConfig = SolverConfig()) -> list[tuple]:
    """Comparison rows for the right half of each polyline, both branches.

    The fixed end vertex ``(1, a)`` is left out; for the even family the
    middle vertex ``t = 0`` is included as vertex 0.
    """
    parity = Parity(parity)
    rows = []
    for m in range(m_min, m_max + 1):
        for branch in (Branch.PLUS, Branch.MINUS):
            fit = build_polyline(parity, m, a, branch, cfg)
            half = fit.vertices[len(fit.vertices) // 2 : -1]
            first = 1 if parity is Parity.ODD else 0
            for k, (t, r) in enumerate(half, start=first):
                ref = catenary_eval(fit.reference, t)
                rows.append((m, branch.value, k, t, r, ref, r - ref))
    return rows


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(CSV_HEADER)
    for m, branch, k, t, r, ref, err in rows:
        writer.writerow([m, branch, k, fmt(t), fmt(r), fmt(ref), fmt(err)])
    return buf.getvalue()
