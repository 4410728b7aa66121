"""Tests for curve specifications, curve construction and scenario loading."""

import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from executor import CommandExecutor, CurveSpec, Family, build_curve, load_scenario, parse_curve_spec
from quatcurves.config import DEFAULT_CONFIG
from quatcurves.errors import CurveIOError, IncomparableRangeError, ParameterError
from quatcurves.families import Convention, SalkowskiParams, salkowski
from verifier import CurveVerifier


class TestParseCurveSpec:
    def test_family_with_parameters(self):
        spec = parse_curve_spec("salkowski:m=2,margin=0.1,convention=classical")
        assert spec.family is Family.SALKOWSKI
        assert spec.m == 2.0
        assert spec.margin == 0.1
        assert spec.convention is Convention.CLASSICAL

    def test_bare_file_path(self):
        spec = parse_curve_spec("data/curve.csv")
        assert spec.family is Family.FILE
        assert spec.path == "data/curve.csv"

    def test_aliases(self):
        spec = parse_curve_spec("helix:a=2,b=0.5")
        assert (spec.radius, spec.pitch) == (2.0, 0.5)
        assert parse_curve_spec("file:file=x.json").path == "x.json"

    def test_rigid_motion_and_antipodal_flag(self):
        spec = parse_curve_spec("salkowski:m=1,rz=0.5,tx=2,antipodal")
        assert spec.rotvec == (0.0, 0.0, 0.5)
        assert spec.translation == (2.0, 0.0, 0.0)
        assert spec.antipodal

    def test_family_without_parameters(self):
        assert parse_curve_spec("line") == CurveSpec(family=Family.LINE)

    @pytest.mark.parametrize("text", ["spiral:m=1", "salkowski:q=1", "salkowski:m", "salkowski:rz=abc", "salkowski:m=one"])
    def test_invalid_specifications(self, text):
        with pytest.raises(ParameterError):
            parse_curve_spec(text)


class TestBuildCurve:
    def test_margin_is_a_fraction(self):
        curve = build_curve(parse_curve_spec("salkowski:m=1,margin=0.1"))
        assert curve.domain == pytest.approx(SalkowskiParams.from_fraction(1.0, 0.1).domain)

    def test_configured_margin(self):
        curve = build_curve(parse_curve_spec("anti-salkowski:m=2"), DEFAULT_CONFIG.merged(margin=0.2))
        assert curve.domain == pytest.approx(SalkowskiParams.from_fraction(2.0, 0.2).domain)

    @pytest.mark.parametrize("text", ["salkowski", "salkowski:m=0", "circle:radius=-1", "file"])
    def test_invalid_curves(self, text):
        with pytest.raises(ParameterError):
            build_curve(parse_curve_spec(text))

    def test_rigid_motion(self):
        curve = build_curve(parse_curve_spec("salkowski:m=1,rx=0.1,ry=0.2,rz=0.3,tx=1,ty=2,tz=3"))
        rotation = Rotation.from_rotvec([0.1, 0.2, 0.3]).as_matrix()
        t = np.linspace(-1.0, 1.0, 7)
        np.testing.assert_allclose(curve(t), salkowski(1.0)(t) @ rotation.T + [1.0, 2.0, 3.0], atol=1e-12)

    def test_antipodal(self):
        curve = build_curve(parse_curve_spec("salkowski:m=1,antipodal"))
        np.testing.assert_allclose(curve(0.4), -salkowski(1.0)(0.4))

    def test_missing_file(self, tmp_path):
        with pytest.raises(CurveIOError):
            build_curve(parse_curve_spec(str(tmp_path / "absent.csv")))


class TestScenario:
    def test_shipped_scenario_names_known_checks(self, root):
        checks = load_scenario(str(root / "scenarios" / "verification" / "scenario.toml"))
        names = [entry["name"] for entry in checks]
        assert set(names) == set(CurveVerifier().names)

    def test_missing_file(self, tmp_path):
        with pytest.raises(CurveIOError):
            load_scenario(str(tmp_path / "absent.toml"))

    @pytest.mark.parametrize("text", ["[[checks\n", "title = 'empty'\n", "[[checks]]\nparams = {}\n"])
    def test_invalid_scenarios(self, tmp_path, text):
        path = tmp_path / "scenario.toml"
        path.write_text(text)
        with pytest.raises(ParameterError):
            load_scenario(str(path))


class TestExecute:
    def test_curve_errors_map_to_exit_codes(self, capsys):
        def incomparable() -> int:
            raise IncomparableRangeError("no overlap")

        assert CommandExecutor().execute(incomparable) == 5
        assert "error: no overlap" in capsys.readouterr().err

    def test_unexpected_errors_exit_one(self):
        def crash() -> int:
            raise RuntimeError("boom")

        assert CommandExecutor().execute(crash) == 1
