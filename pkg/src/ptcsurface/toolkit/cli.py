"""Command-line interface.

Usage:
    ptcsurface solve --parity odd --m 3 --a 2 --branch plus
    ptcsurface table --a 2 --m-max 3 --parity odd --out table.csv --figure table.svg
    ptcsurface plot --a 2 --m 10 --branch minus --overlay-catenary --out fig.svg
    ptcsurface mesh --a 2 --m 3 --segments 128 --out surface.obj
    ptcsurface verify --checks det-identity,lemma51 --m-max 8

Exit codes: 0 success, 2 usage error, 3 domain error, 4 no solution,
5 a verification check failed. Errors are reported as JSON on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .. import __version__
from ..catenary import build_polyline
from ..errors import BracketError, DegenerateDouble, DomainError, NoSolution, NotCriticalError
from ..profilefn import Parity, ProfileFamily
from ..solver import Branch, SolverConfig, build_surface, default_ell
from . import mesh as meshing
from . import plotting
from .report import provenance, rows_to_csv, run_solve, table_rows
from .verify import CHECKS, run_checks

EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_NO_SOLUTION = 4
EXIT_CHECK_FAILED = 5


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _int_list(text):
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"expected positive integers, got {text}")
    return values


def _check_list(text):
    names = [v.strip() for v in text.split(",") if v.strip()]
    bad = [n for n in names if n not in CHECKS]
    if bad or not names:
        raise argparse.ArgumentTypeError(
            f"unknown check(s) {', '.join(bad) or text!r}; choose from {', '.join(CHECKS)}"
        )
    return names


def _add_common(p, formats):
    p.add_argument("--parity", choices=[v.value for v in Parity], default="odd")
    p.add_argument("--root-tol", type=float, default=1e-12)
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--out", type=Path, default=None,
                   help="output file (default: standard output)")


def _add_surface(p, formats):
    _add_common(p, formats)
    p.add_argument("--m", type=_positive_int, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--ell", type=float, default=None,
                   help="cone height (default 2/(2m+1) odd, 1/m even)")
    p.add_argument("--branch", choices=[v.value for v in Branch], default="plus")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptcsurface",
        description="PTC minimal surfaces approximating catenoids.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one surface and report it as JSON")
    _add_surface(p, ["json", "csv"])

    p = sub.add_parser("table", help="polyline-versus-catenary comparison table")
    _add_common(p, ["csv"])
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--m-max", type=_positive_int, required=True)
    p.add_argument("--m-min", type=_positive_int, default=1)
    p.add_argument("--figure", type=Path, default=None,
                   help="also render the polylines to this SVG file")

    p = sub.add_parser("plot", help="SVG drawing of a polyline")
    _add_surface(p, ["svg"])
    p.add_argument("--overlay-catenary", action="store_true")

    p = sub.add_parser("mesh", help="OBJ triangle mesh of the surface of revolution")
    _add_surface(p, ["obj"])
    p.add_argument("--segments", type=int, default=64)

    p = sub.add_parser("verify", help="batch identity, inequality and limit checks")
    p.add_argument("--checks", type=_check_list, default=list(CHECKS))
    p.add_argument("--m-max", type=_positive_int, default=8)
    p.add_argument("--m", type=_int_list, default=[10, 100, 1000],
                   help="comma-separated m values for the profile-limit check")
    p.add_argument("--format", choices=["json"], default="json")
    p.add_argument("--out", type=Path, default=None)
    return parser


def _emit(text: str, out: Path | None):
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8", newline="")


def _config(args):
    return SolverConfig(root_tol=args.root_tol)


def _cmd_solve(args):
    report = run_solve(Parity(args.parity), args.m, args.a, Branch(args.branch),
                       ell=args.ell, cfg=_config(args))
    if args.format == "json":
        _emit(report.to_json(), args.out)
        return 0
    if report.fit is None:
        raise DomainError("csv output needs the default cone height and a > eta_inf")
    rows = table_rows(Parity(args.parity), args.a, args.m, args.m, _config(args))
    rows = [r for r in rows if r[1] == args.branch]
    _emit(rows_to_csv(rows), args.out)
    return 0


def _cmd_table(args):
    if args.m_min > args.m_max:
        raise DomainError(f"--m-min {args.m_min} exceeds --m-max {args.m_max}")
    cfg = _config(args)
    parity = Parity(args.parity)
    rows = table_rows(parity, args.a, args.m_max, args.m_min, cfg)
    _emit(rows_to_csv(rows), args.out)
    if args.figure is not None:
        fits = [build_polyline(parity, m, args.a, b, cfg)
                for m in range(args.m_min, args.m_max + 1) for b in Branch]
        args.figure.write_text(plotting.table_svg(fits), encoding="utf-8")
    return 0


def _check_default_ell(args):
    if args.ell is not None and args.ell != default_ell(Parity(args.parity), args.m):
        raise DomainError("polylines are defined only for the default cone height")


def _cmd_plot(args):
    _check_default_ell(args)
    fit = build_polyline(Parity(args.parity), args.m, args.a, Branch(args.branch), _config(args))
    _emit(plotting.polyline_svg(fit, args.overlay_catenary), args.out)
    return 0


def _cmd_mesh(args):
    if args.segments < 3:
        raise _UsageError(f"--segments must be at least 3, got {args.segments}")
    parity = Parity(args.parity)
    ell = default_ell(parity, args.m) if args.ell is None else args.ell
    surface = build_surface(ProfileFamily(parity, ell), args.m, args.a,
                            Branch(args.branch), _config(args))
    _emit(meshing.to_obj(meshing.surface_mesh(surface, args.segments)), args.out)
    return 0


def _cmd_verify(args):
    result = run_checks(args.checks, args.m_max, args.m)
    result["meta"] = provenance()
    _emit(json.dumps(result, indent=2) + "\n", args.out)
    return 0 if result["passed"] else EXIT_CHECK_FAILED


COMMANDS = {
    "solve": _cmd_solve,
    "table": _cmd_table,
    "plot": _cmd_plot,
    "mesh": _cmd_mesh,
    "verify": _cmd_verify,
}


class _UsageError(Exception):
    pass


def _fail(kind, exc, code, **extra):
    payload = {"error": kind, "message": str(exc), **extra}
    sys.stderr.write(json.dumps(payload) + "\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except _UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except NoSolution as exc:
        return _fail("no_solution", exc, EXIT_NO_SOLUTION, a=exc.a, minimum=exc.minimum)
    except DegenerateDouble as exc:
        return _fail("degenerate_double", exc, EXIT_NO_SOLUTION, a=exc.a, minimum=exc.minimum)
    except (DomainError, BracketError, NotCriticalError) as exc:
        return _fail("domain_error", exc, EXIT_DOMAIN)


if __name__ == "__main__":
    sys.exit(main())
