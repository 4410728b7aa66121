"""Tests for configuration loading."""

import pytest
import yaml

from quatcurves.config import DEFAULT_CONFIG, ToolkitConfig, load_config
from quatcurves.errors import CurveIOError, ParameterError


class TestDefaults:
    def test_default_values(self):
        assert DEFAULT_CONFIG.grid_size == 2001
        assert DEFAULT_CONFIG.fd_step_rel == 1e-4
        assert DEFAULT_CONFIG.tol == 1e-4
        assert DEFAULT_CONFIG.margin == 0.05
        assert DEFAULT_CONFIG.precision == 12

    def test_shipped_defaults_file_matches_model(self, root):
        shipped = yaml.safe_load((root / "config" / "defaults.yaml").read_text())
        assert ToolkitConfig.model_validate(shipped) == DEFAULT_CONFIG

    def test_template_loads_as_defaults(self, root):
        assert load_config(root / "config" / "defaults.yaml") == DEFAULT_CONFIG

    def test_no_path_gives_defaults(self):
        assert load_config(None) is DEFAULT_CONFIG


class TestLoadConfig:
    def test_file_overrides_defaults(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("tol: 1.0e-6\ngrid_size: 501\n")
        config = load_config(path)
        assert config.tol == 1e-6
        assert config.grid_size == 501
        assert config.margin == DEFAULT_CONFIG.margin

    def test_empty_file_gives_defaults(self, tmp_path):
        path = tmp_path / "empty.yaml"
        path.write_text("")
        assert load_config(path) == DEFAULT_CONFIG

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("grid_points: 10\n")
        with pytest.raises(ParameterError):
            load_config(path)

    def test_invalid_value_rejected(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("margin: 1.5\n")
        with pytest.raises(ParameterError):
            load_config(path)

    def test_non_mapping_rejected(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ParameterError):
            load_config(path)

    def test_malformed_yaml_rejected(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("tol: [1, 2\n")
        with pytest.raises(ParameterError):
            load_config(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(CurveIOError) as excinfo:
            load_config(tmp_path / "absent.yaml")
        assert excinfo.value.exit_code == 3


class TestMerged:
    def test_none_overrides_are_ignored(self):
        assert DEFAULT_CONFIG.merged(tol=None, grid_size=None) is DEFAULT_CONFIG

    def test_override_applied(self):
        assert DEFAULT_CONFIG.merged(grid_size=11).grid_size == 11

    def test_invalid_override(self):
        with pytest.raises(ParameterError):
            DEFAULT_CONFIG.merged(grid_size=1)
