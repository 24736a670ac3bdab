import csv
import io
import json
import math

import numpy as np
import pytest

from ptcsurface.profilefn import Parity, ProfileFamily
from ptcsurface.solver import Branch, build_surface, default_ell
from ptcsurface.toolkit import cli
from ptcsurface.toolkit.mesh import mesh_area, surface_mesh, to_obj
from ptcsurface.toolkit.report import CSV_HEADER, RunReport, run_solve, table_rows


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(autouse=True)
def no_epoch(monkeypatch):
    monkeypatch.delenv("SOURCE_DATE_EPOCH", raising=False)


class TestSolve:
    def test_odd_m3(self, capsys):
        code, out, _ = run(capsys, "solve", "--parity", "odd", "--m", "3", "--a", "2", "--branch", "plus")
        assert code == 0
        data = json.loads(out)
        assert set(data) == {"inputs", "branch_pair", "surface", "stability", "fit", "meta"}
        assert set(data["branch_pair"]) == {"mu", "nu", "y_minus", "y_plus"}
        assert data["surface"]["radii"][1:4] == pytest.approx([1.8497, 1.7518, 1.7035], abs=1e-4)
        assert data["stability"]["verdict"] == "Stable"
        assert len(data["stability"]["leading_minors"]) == 3
        assert {"vertices", "errors", "max_abs_error"} <= set(data["fit"])
        assert data["meta"]["version"]

    def test_no_solution(self, capsys):
        code, out, err = run(capsys, "solve", "--parity", "odd", "--m", "2", "--a", "0.1")
        assert code == 4
        assert out == ""
        payload = json.loads(err)
        assert payload["error"] == "no_solution"
        assert payload["message"].startswith("no solution: a <= nu")

    def test_even_m1(self, capsys):
        code, out, _ = run(capsys, "solve", "--parity", "even", "--m", "1", "--a", "2", "--branch", "plus")
        assert code == 0
        data = json.loads(out)
        assert len(data["surface"]["radii"]) == 3
        assert data["stability"]["verdict"] == "Stable"

    def test_minus(self, capsys):
        code, out, _ = run(capsys, "solve", "--m", "1", "--a", "2", "--branch", "minus")
        assert json.loads(out)["stability"]["verdict"] == "NotPositiveDefinite"

    def test_custom_ell_has_no_fit(self, capsys):
        code, out, _ = run(capsys, "solve", "--m", "2", "--a", "2", "--ell", "0.3")
        assert code == 0
        data = json.loads(out)
        assert data["fit"] is None
        assert data["inputs"]["ell"] == 0.3

    def test_below_eta_inf_has_no_fit(self, capsys):
        code, out, _ = run(capsys, "solve", "--m", "1", "--a", "1.49")
        assert code == 0
        assert json.loads(out)["fit"] is None

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "solve", "--m", "2", "--a", "2", "--format", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == list(CSV_HEADER)
        assert len(rows) == 3
        assert all(r[1] == "plus" for r in rows[1:])

    def test_domain_error(self, capsys):
        code, _, err = run(capsys, "solve", "--m", "2", "--a", "2", "--ell", "-1")
        assert code == 3
        assert json.loads(err)["error"] == "domain_error"

    def test_degenerate(self, capsys):
        from ptcsurface.solver import find_minimum

        _, nu = find_minimum(ProfileFamily.odd(2 / 5), 2)
        code, _, err = run(capsys, "solve", "--m", "2", "--a", repr(nu))
        assert code == 4
        assert json.loads(err)["error"] == "degenerate_double"

    @pytest.mark.parametrize("argv", [
        ["solve", "--m", "0", "--a", "2"],
        ["solve", "--m", "2"],
        ["solve", "--m", "2", "--a", "2", "--parity", "triple"],
        ["bogus"],
        ["verify", "--checks", "nope"],
        ["verify", "--m", "10,x"],
        ["mesh", "--m", "1", "--a", "2", "--segments", "2"],
    ])
    def test_usage_errors(self, argv, capsys):
        with pytest.raises(SystemExit) as info:
            cli.main(argv)
        assert info.value.code == 2

    def test_out_file(self, tmp_path, capsys):
        target = tmp_path / "r.json"
        code, out, _ = run(capsys, "solve", "--m", "1", "--a", "2", "--out", str(target))
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["inputs"]["m"] == 1


class TestReport:
    def test_round_trip(self):
        report = run_solve(Parity.ODD, 3, 2.0, Branch.MINUS)
        back = RunReport.from_json(report.to_json())
        assert back == report
        assert back.to_json() == report.to_json()

    def test_floats_exact(self):
        report = run_solve(Parity.EVEN, 2, 2.0, Branch.PLUS)
        radii = json.loads(report.to_json())["surface"]["radii"]
        assert radii == list(report.surface["radii"])

    def test_timestamp_from_epoch(self, monkeypatch):
        monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
        assert run_solve(Parity.ODD, 1, 2.0, Branch.PLUS).meta["timestamp"] == "1970-01-01T00:00:00+00:00"

    def test_no_wall_clock(self):
        assert run_solve(Parity.ODD, 1, 2.0, Branch.PLUS).meta["timestamp"] is None


class TestTable:
    def test_odd_m3(self, capsys):
        code, out, _ = run(capsys, "table", "--a", "2", "--m-max", "3", "--parity", "odd")
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == list(CSV_HEADER)
        assert len(rows) == 13
        plus3 = [float(r[4]) for r in rows[1:] if r[0] == "3" and r[1] == "plus"]
        assert plus3 == pytest.approx([1.7035, 1.7518, 1.8497], abs=1e-4)
        cat3 = [float(r[5]) for r in rows[1:] if r[0] == "3" and r[1] == "plus"]
        assert cat3 == pytest.approx([1.7026, 1.7510, 1.8492], abs=1e-4)
        assert "\r\n" in out

    def test_m1(self, capsys):
        code, out, _ = run(capsys, "table", "--a", "2", "--m-max", "1")
        assert len(out.strip().splitlines()) == 3

    def test_low_a(self, capsys):
        code, out, _ = run(capsys, "table", "--a", "1.6", "--m-max", "5")
        assert code == 0
        assert len(out.strip().splitlines()) == 31

    def test_below_eta_inf(self, capsys):
        code, _, err = run(capsys, "table", "--a", "1.4", "--m-max", "2")
        assert code == 4

    def test_m_range(self, capsys):
        code, _, _ = run(capsys, "table", "--a", "2", "--m-max", "2", "--m-min", "3")
        assert code == 3

    def test_even_rows_include_centre(self):
        rows = table_rows(Parity.EVEN, 2.0, 2, 2)
        assert [r[2] for r in rows if r[1] == "plus"] == [0, 1]
        assert rows[0][3] == 0.0

    def test_figure(self, tmp_path, capsys):
        fig = tmp_path / "t.svg"
        code, _, _ = run(capsys, "table", "--a", "2", "--m-max", "2", "--figure", str(fig))
        assert code == 0
        assert fig.read_text().lstrip().startswith("<?xml")


class TestPlot:
    def test_minus_m5(self, capsys):
        code, out, _ = run(capsys, "plot", "--a", "2", "--m", "5", "--branch", "minus")
        assert code == 0
        assert "<svg" in out and 'width="1000pt"' in out and 'height="600pt"' in out

    def test_overlay(self, capsys):
        _, plain, _ = run(capsys, "plot", "--a", "2", "--m", "10", "--branch", "minus")
        _, over, _ = run(capsys, "plot", "--a", "2", "--m", "10", "--branch", "minus", "--overlay-catenary")
        assert "catenary c = " in over
        assert "catenary c = " not in plain

    def test_m1_four_vertices(self):
        from ptcsurface.catenary import build_polyline

        assert len(build_polyline(Parity.ODD, 1, 2.0, Branch.PLUS).vertices) == 4

    def test_rejects_custom_ell(self, capsys):
        code, _, _ = run(capsys, "plot", "--a", "2", "--m", "3", "--ell", "0.5")
        assert code == 3


class TestMesh:
    @pytest.mark.parametrize("parity, m, rings", [(Parity.ODD, 1, 4), (Parity.EVEN, 2, 5)])
    def test_structure(self, parity, m, rings):
        s = build_surface(ProfileFamily(parity, default_ell(parity, m)), m, 2.0, Branch.PLUS)
        mesh = surface_mesh(s, 16)
        assert mesh.n_rings == rings
        assert len(mesh.faces) == 2 * 16 * (rings - 1)
        assert mesh.vertices[:, 0].min() == pytest.approx(-1.0)
        assert mesh.vertices[:, 0].max() == pytest.approx(1.0)

    def test_watertight(self):
        s = build_surface(ProfileFamily.odd(2 / 7), 3, 2.0, Branch.PLUS)
        mesh = surface_mesh(s, 12)
        edges = {}
        for tri in mesh.faces.tolist():
            for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])):
                key = (min(a, b), max(a, b))
                edges[key] = edges.get(key, 0) + 1
        boundary = [e for e, n in edges.items() if n == 1]
        assert all(n in (1, 2) for n in edges.values())
        # only the two end circles are open
        assert len(boundary) == 2 * 12
        ring = lambda v: v // 12
        assert {ring(v) for e in boundary for v in e} == {0, mesh.n_rings - 1}
        assert len(np.unique(mesh.faces)) == len(mesh.vertices)

    @pytest.mark.parametrize("parity", list(Parity))
    def test_area_converges(self, parity):
        m = 4
        s = build_surface(ProfileFamily(parity, default_ell(parity, m)), m, 2.0, Branch.PLUS)
        target = math.pi * s.area_over_pi
        gaps = [abs(mesh_area(surface_mesh(s, n)) - target) / target for n in (16, 64, 256)]
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] < 5e-3

    def test_obj(self, capsys):
        code, out, _ = run(capsys, "mesh", "--a", "2", "--m", "1", "--segments", "8")
        assert code == 0
        lines = out.splitlines()
        verts = [l for l in lines if l.startswith("v ")]
        faces = [l for l in lines if l.startswith("f ")]
        assert len(verts) == 32 and len(faces) == 48
        assert len(verts) + len(faces) == len(lines)
        idx = [int(x) for f in faces for x in f.split()[1:]]
        assert min(idx) == 1 and max(idx) == 32

    def test_to_obj_round_numbers(self):
        s = build_surface(ProfileFamily.odd(2 / 3), 1, 2.0, Branch.PLUS)
        text = to_obj(surface_mesh(s, 4))
        first = text.splitlines()[0].split()
        assert float(first[1]) == -1.0 and float(first[2]) == 2.0


class TestVerify:
    def test_det_identity(self, capsys):
        code, out, _ = run(capsys, "verify", "--checks", "det-identity", "--m-max", "8")
        data = json.loads(out)
        assert code == 0 and data["passed"]
        assert data["checks"][0]["max_rel_err"] < 1e-9

    def test_lemma51(self, capsys):
        code, out, _ = run(capsys, "verify", "--checks", "lemma51", "--m-max", "20")
        data = json.loads(out)
        assert code == 0
        assert all(g > 0 for g in data["checks"][0]["gaps"].values())
        assert len(data["checks"][0]["gaps"]) == 20

    def test_profile_limit(self, capsys):
        code, out, _ = run(capsys, "verify", "--checks", "profile-limit", "--m", "10,100,1000")
        data = json.loads(out)
        assert code == 0
        for series in data["checks"][0]["series"]:
            assert series["decreasing"]

    def test_failure_exit(self, capsys, monkeypatch):
        monkeypatch.setattr("ptcsurface.toolkit.verify.DET_IDENTITY_TOL", 0.0)
        code, out, _ = run(capsys, "verify", "--checks", "det-identity", "--m-max", "2")
        assert code == 5
        assert json.loads(out)["passed"] is False


class TestDeterminism:
    @pytest.mark.parametrize("argv", [
        ["solve", "--m", "3", "--a", "2"],
        ["table", "--a", "2", "--m-max", "3"],
        ["plot", "--a", "2", "--m", "5", "--branch", "minus", "--overlay-catenary"],
        ["mesh", "--a", "2", "--m", "2", "--segments", "16"],
        ["verify", "--checks", "lemma51", "--m-max", "3"],
    ])
    def test_byte_identical(self, argv, capsys):
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second and first


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "ptcsurface", "--version"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "ptcsurface" in proc.stdout
