"""End-to-end tests of the command line through ``main``."""

import csv
import io
import json

import jsonschema
import numpy as np
import pytest

from cli import main


def read_csv(text: str) -> tuple[list[str], list[list[str]]]:
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


class TestSample:
    def test_salkowski_rows(self, capsys):
        assert main(["sample", "--family", "salkowski", "--m", "1", "--n", "11"]) == 0
        header, rows = read_csv(capsys.readouterr().out)
        assert header == ["t", "s", "x", "y", "z"]
        assert len(rows) == 11
        assert float(rows[0][1]) == 0.0
        s = np.array([float(row[1]) for row in rows])
        assert np.all(np.diff(s) > 0)

    def test_json_output(self, capsys):
        assert main(["sample", "--family", "helix", "--radius", "2", "--n", "5", "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["columns"] == ["t", "s", "x", "y", "z"]
        assert len(payload["rows"]) == 5
        assert payload["rows"][0][2] == pytest.approx(2.0)

    def test_missing_shape_parameter(self, capsys):
        assert main(["sample", "--family", "salkowski"]) == 2
        assert "shape parameter m" in capsys.readouterr().err

    def test_range_outside_domain(self):
        assert main(["sample", "--family", "circle", "--t0", "-1", "--n", "5"]) == 2

    def test_unwritable_output(self, tmp_path):
        assert main(["sample", "--family", "circle", "--n", "5", "--out", str(tmp_path / "no" / "x.csv")]) == 3

    def test_config_precision(self, tmp_path, capsys):
        config = tmp_path / "config.yaml"
        config.write_text("precision: 4\n")
        assert main(["--config", str(config), "sample", "--family", "circle", "--n", "3"]) == 0
        _, rows = read_csv(capsys.readouterr().out)
        assert rows[2][0] == "6.283"

    def test_missing_config(self, tmp_path):
        assert main(["--config", str(tmp_path / "absent.yaml"), "sample", "--family", "circle"]) == 3

    def test_written_file_feeds_frenet(self, tmp_path, capsys):
        path = tmp_path / "helix.csv"
        assert main(["sample", "--family", "helix", "--n", "401", "--out", str(path)]) == 0
        assert main(["frenet", "--input", str(path), "--n", "21", "--t0", "1", "--t1", "5"]) == 0
        header, rows = read_csv(capsys.readouterr().out)
        k = np.array([float(row[header.index("k")]) for row in rows])
        r = np.array([float(row[header.index("r")]) for row in rows])
        np.testing.assert_allclose(k, 0.5, atol=1e-5)
        np.testing.assert_allclose(r, 0.5, atol=1e-4)


class TestFrenet:
    def test_line_has_no_frame(self, capsys):
        assert main(["frenet", "--family", "line", "--n", "11"]) == 4
        assert "undefined" in capsys.readouterr().err

    def test_anti_salkowski_flags_inflection(self, capsys):
        assert main(["frenet", "--family", "anti-salkowski", "--m", "1", "--n", "101"]) == 0
        header, rows = read_csv(capsys.readouterr().out)
        assert header[-2:] == ["k", "r"]
        assert rows[50][2] == "nan"
        assert rows[0][2] != "nan"

    def test_family_and_input_conflict(self):
        assert main(["frenet", "--family", "circle", "--input", "line"]) == 2

    def test_no_curve(self):
        assert main(["frenet"]) == 2


class TestVerify:
    def test_named_check(self, capsys):
        assert main(["verify", "torsion-law", "--m", "1", "--n", "401"]) == 0
        assert "torsion-law: PASS" in capsys.readouterr().out

    def test_json_report(self, capsys):
        assert main(["verify", "quaternion-algebra", "--n", "500", "--json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["check"] == "quaternion-algebra"
        assert report["params"] == {"samples": 500}
        assert report["pass"] is True

    def test_failing_tolerance_exits_one(self, capsys):
        assert main(["verify", "salkowski-intrinsics", "--m", "1", "--n", "101", "--tol", "1e-30"]) == 1
        assert "FAIL" in capsys.readouterr().out

    def test_scenario(self, tmp_path, report_schema):
        scenario = tmp_path / "scenario.toml"
        scenario.write_text(
            '[[checks]]\nname = "quaternion-algebra"\nparams = { samples = 100 }\n\n'
            '[[checks]]\nname = "n2-slant-helix"\nparams = { grid_size = 201 }\n'
        )
        out = tmp_path / "reports.json"
        assert main(["verify", "--scenario", str(scenario), "--json", "--out", str(out)]) == 0
        reports = json.loads(out.read_text())
        jsonschema.validate(instance=reports, schema=report_schema)
        assert [report["check"] for report in reports] == ["quaternion-algebra", "n2-slant-helix"]

    def test_failing_report_follows_schema(self, capsys, report_schema):
        assert main(["verify", "salkowski-intrinsics", "--m", "1", "--n", "101", "--tol", "1e-30", "--json"]) == 1
        report = json.loads(capsys.readouterr().out)
        jsonschema.validate(instance=report, schema=report_schema)
        assert report["pass"] is False

    def test_missing_scenario(self, tmp_path):
        assert main(["verify", "--scenario", str(tmp_path / "absent.toml")]) == 3

    def test_needs_check_or_scenario(self):
        assert main(["verify"]) == 2

    def test_unknown_check(self):
        assert main(["verify", "spiral"]) == 2


class TestCompare:
    def test_circles_are_similar(self, capsys):
        assert main(["compare", "--a", "circle:radius=1", "--b", "circle:radius=2", "--n", "401"]) == 0
        assert "degenerate: plane-curves" in capsys.readouterr().out

    def test_salkowski_and_anti_salkowski_differ(self):
        assert main(["compare", "--a", "salkowski:m=1", "--b", "anti-salkowski:m=1", "--n", "401"]) == 1

    def test_rigid_copy(self, capsys):
        code = main(["compare", "--a", "salkowski:m=1", "--b", "salkowski:m=1,rz=0.3,tx=1", "--n", "401", "--json"])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["verdict"] is True
        assert report["criterion"] == "ratio"

    def test_antipodal_image(self):
        args = ["compare", "--a", "salkowski:m=1", "--b", "salkowski:m=1,antipodal", "--n", "401"]
        assert main(args) == 1
        assert main(args + ["--antipodal"]) == 0

    def test_incomparable_kinds(self, capsys):
        assert main(["compare", "--a", "line", "--b", "circle", "--n", "101"]) == 5
        assert "error:" in capsys.readouterr().err

    def test_tangent_criterion(self):
        args = ["compare", "--a", "helix:a=1,b=1", "--b", "helix:a=1,b=1,rx=0.4,tz=2", "--criterion", "tangent", "--n", "401"]
        assert main(args) == 0


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "sample" in capsys.readouterr().out
