import csv
import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from cusp3r.cli import dumps, main, random_designs

FOUR = ["--d3", "2", "--d4", "1.5", "--r2", "1"]
TWO = ["--d3", "3", "--d4", "4", "--r2", "3"]


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def strip_timing(text):
    data = json.loads(text)
    data["run"].pop("wall_time_ms")
    return data


class TestClassify:
    def test_four_cusp_design(self, capsys):
        code, out, _ = run(capsys, ["classify", *FOUR])
        data = json.loads(out)
        assert code == 0
        assert data["domain_analytic"] == "D2"
        assert data["cusp_count"] == 4
        assert data["cuspidal"] is True
        assert set(data["surfaces"]) == {"c1", "c2", "c3"}
        assert data["nearest_surface"]["id"] == "C2"

    def test_empirical_agreement(self, capsys):
        code, out, _ = run(capsys, ["classify", *TWO, "--empirical"])
        data = json.loads(out)
        assert code == 0
        assert data["domain_empirical"] == "D3"
        assert data["agreement"] is True
        assert data["evidence"]["cusp_count"] == 2

    def test_exactly_on_c2(self, capsys):
        code, out, _ = run(capsys, ["classify", "--d3", "2", "--d4", "2.108185106778920",
                                    "--r2", "1"])
        data = json.loads(out)
        assert code == 2
        assert data["domain_analytic"] == "NonGeneric"
        assert data["generic"] is False

    def test_wider_margin(self, capsys):
        argv = ["classify", "--d3", "2", "--d4", "2.1082", "--r2", "1"]
        assert run(capsys, argv)[0] == 0
        assert run(capsys, argv + ["--margin", "1e-4"])[0] == 2

    @pytest.mark.parametrize("argv", [
        ["classify", "--d3", "-1", "--d4", "1", "--r2", "1"],
        ["classify", "--d3", "nan", "--d4", "1", "--r2", "1"],
        ["classify", "--d3", "1", "--d4", "1"],
        ["classify", *FOUR, "--samples", "100"],
        ["frobnicate"],
    ])
    def test_usage_errors(self, capsys, argv):
        assert run(capsys, argv)[0] == 1

    def test_deterministic(self, capsys):
        a = run(capsys, ["classify", *FOUR])[1]
        b = run(capsys, ["classify", *FOUR])[1]
        assert strip_timing(a) == strip_timing(b)
        assert isinstance(json.loads(a)["run"]["wall_time_ms"], int)

    def test_writes_out_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run(capsys, ["classify", *FOUR, "--out", str(target)])
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["run"]["artifacts"] == [str(target)]

    def test_unwritable_path(self, capsys, tmp_path):
        target = tmp_path / "missing" / "report.json"
        code, _, err = run(capsys, ["classify", *FOUR, "--out", str(target)])
        assert code == 1
        assert "cannot write" in err


class TestPlots:
    def test_workspace_csv_and_svg_agree(self, capsys, tmp_path):
        stem = tmp_path / "ws"
        code, out, _ = run(capsys, ["plot-workspace", *FOUR, "--out", str(stem)])
        assert code == 0
        with open(tmp_path / "ws.csv", newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert set(rows[0]) == {"rho", "z", "role"}
        csv_cusps = sorted((r["rho"], r["z"]) for r in rows if r["role"] == "cusp")
        root = ET.parse(tmp_path / "ws.svg").getroot()
        svg_cusps = sorted((el.get("data-rho"), el.get("data-z"))
                           for el in root.iter() if el.get("data-rho") is not None)
        assert len(csv_cusps) == 4
        assert csv_cusps == svg_cusps
        assert len(json.loads(out)["cusps"]) == 4

    def test_workspace_isolated_points(self, capsys, tmp_path):
        run(capsys, ["plot-workspace", *TWO, "--out", str(tmp_path / "ws"), "--format", "csv"])
        with open(tmp_path / "ws.csv", newline="") as fh:
            roles = [r["role"] for r in csv.DictReader(fh)]
        assert roles.count("isolated") == 2
        assert not (tmp_path / "ws.svg").exists()

    def test_jointspace(self, capsys, tmp_path):
        code, _, _ = run(capsys, ["plot-jointspace", *TWO, "--out", str(tmp_path / "js")])
        assert code == 0
        root = ET.parse(tmp_path / "js.svg").getroot()
        assert [float(v) for v in root.get("data-xlim").split()] == pytest.approx([-np.pi, np.pi])
        with open(tmp_path / "js.csv", newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert {r["branch_kind"] for r in rows} == {"curve+", "curve-", "line+", "line-"}
        t = np.array([[float(r["theta2"]), float(r["theta3"])] for r in rows])
        assert np.all((t >= -np.pi) & (t < np.pi))

    def test_plot_needs_out(self, capsys):
        assert run(capsys, ["plot-jointspace", *FOUR])[0] == 1


class TestSweep:
    def test_small_map(self, capsys, tmp_path):
        code, out, _ = run(capsys, ["sweep", "--resolution", "32", "--out", str(tmp_path / "m")])
        assert code == 0
        with open(tmp_path / "m.csv", newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert list(rows[0]) == ["d3", "d4", "domain", "cuspidal"]
        assert len(rows) == 32 * 32
        assert {r["domain"] for r in rows} <= {"D1", "D2", "D3", "D4", "D5", "NG"}
        assert sum(json.loads(out)["label_counts"].values()) == 32 * 32
        root = ET.parse(tmp_path / "m.svg").getroot()
        overlays = {el.get("data-surface") for el in root.iter() if el.get("data-surface")}
        assert overlays == {"C1", "C2", "C3", "C4"}

    def test_resolution_floor(self, capsys, tmp_path):
        assert run(capsys, ["sweep", "--resolution", "31", "--out", str(tmp_path / "m")])[0] == 1

    def test_bad_range(self, capsys, tmp_path):
        argv = ["sweep", "--resolution", "32", "--d3-range", "2", "1",
                "--out", str(tmp_path / "m")]
        assert run(capsys, argv)[0] == 1


class TestCheck:
    def test_few_draws(self, capsys):
        code, out, _ = run(capsys, ["check", "--draws", "3", "--seed", "4"])
        data = json.loads(out)
        assert code == 0
        assert data["draws"] == 3
        assert data["c1_check"]["verdict"] == "standard"
        assert data["run"]["seed"] == 4

    def test_designs_are_seeded(self):
        a = random_designs(5, 1)
        assert a == random_designs(5, 1)
        assert a != random_designs(5, 2)
        assert all(0.1 <= v <= 4.0 for p in a for v in (p.d3, p.d4, p.r2))


class TestKinematicCommands:
    def test_fk_degrees(self, capsys):
        code, out, _ = run(capsys, ["fk", *FOUR, "--theta1", "0", "--theta2", "-90",
                                    "--theta3", "0", "--degrees"])
        point = json.loads(out)["point"]
        assert code == 0
        assert (point["x"], point["y"], point["z"]) == pytest.approx((1.0, 1.0, 3.5))

    def test_ik(self, capsys):
        code, out, _ = run(capsys, ["ik", *FOUR, "--x", "2.2", "--y", "0", "--z", "0"])
        data = json.loads(out)
        assert code == 0 and data["count"] == 4
        assert all(s["multiplicity"] == 1 for s in data["solutions"])


class TestDumps:
    def test_seventeen_digits(self):
        text = dumps({"a": 0.1, "b": [1.0, 2], "c": None})
        assert json.loads(text) == {"a": 0.1, "b": [1.0, 2], "c": None}
        assert "0.10000000000000001" in text

    def test_sorted_stable(self):
        assert dumps({"x": 1}) == dumps({"x": 1})
