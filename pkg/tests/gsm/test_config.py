"""Tests for YAML configuration loading."""

import math
import tempfile
from pathlib import Path

import pytest

from src.gsm.config import ConfigError, GsmConfig, load_config

ROOT = Path(__file__).resolve().parents[2]


def _write(tmpdir, text):
    path = Path(tmpdir) / "settings.yaml"
    path.write_text(text)
    return path


def test_no_file_gives_defaults():
    """Test that omitting the file yields the documented defaults."""
    config = load_config(None)
    assert config.solver.tol == 1e-8
    assert config.solver.symmetric is True
    assert config.gibbs.burn_in == 1000
    assert config.path.nlambda == 50
    assert config.path.lambda_min_ratio == 0.01


def test_shipped_defaults_match_code():
    """Test that config/default.yaml loads and agrees with GsmConfig()."""
    config = load_config(ROOT / "config" / "default.yaml")
    assert config.to_dict() == GsmConfig().to_dict()


def test_partial_override_keeps_other_defaults():
    """Test that only the given keys change."""
    with tempfile.TemporaryDirectory() as tmpdir:
        path = _write(tmpdir, "solver:\n  max_iter: 50\ngibbs:\n  thin: 3\n")
        config = load_config(path)
    assert config.solver.max_iter == 50
    assert config.solver.tol == 1e-8
    assert config.gibbs.thin == 3
    assert config.gibbs.burn_in == 1000


def test_numeric_strings_and_inf():
    """Test that YAML strings like 1e-6 and inf are read as numbers."""
    with tempfile.TemporaryDirectory() as tmpdir:
        path = _write(tmpdir, "solver:\n  tol: 1e-6\n  lambda_ratio: inf\n")
        config = load_config(path)
    assert config.solver.tol == 1e-6
    assert math.isinf(config.solver.lambda_ratio)


def test_integer_for_float_field():
    """Test that an integer is accepted where a float is expected."""
    with tempfile.TemporaryDirectory() as tmpdir:
        path = _write(tmpdir, "gibbs:\n  domain_cap: 20\n")
        config = load_config(path)
    assert config.gibbs.domain_cap == 20.0
    assert isinstance(config.gibbs.domain_cap, float)


def test_empty_file_gives_defaults():
    """Test that an empty file is the same as no file."""
    with tempfile.TemporaryDirectory() as tmpdir:
        path = _write(tmpdir, "")
        config = load_config(path)
    assert config.to_dict() == GsmConfig().to_dict()


def test_empty_section_keeps_defaults():
    """Test that a section with no keys changes nothing."""
    with tempfile.TemporaryDirectory() as tmpdir:
        path = _write(tmpdir, "solver:\n")
        config = load_config(path)
    assert config.solver.max_iter == 10000


@pytest.mark.parametrize(
    "text, message",
    [
        ("solvr:\n  tol: 1\n", "Unknown section 'solvr'"),
        ("solver:\n  tolerance: 1\n", "Unknown key 'solver.tolerance'"),
        ("solver:\n  max_iter: many\n", "must be an integer"),
        ("solver:\n  max_iter: 2.5\n", "must be an integer"),
        ("solver:\n  symmetric: 1\n", "must be true or false"),
        ("solver:\n  tol: small\n", "must be a number"),
        ("gibbs:\n  thin: 0\n", "Invalid value in section 'gibbs'"),
        ("path:\n  lambda_min_ratio: 2\n", "Invalid value in section 'path'"),
        ("- solver\n- gibbs\n", "must be a mapping"),
        ("solver: 3\n", "must be a mapping"),
        ("solver: [unclosed\n", "Invalid YAML"),
    ],
)
def test_invalid_files(text, message):
    """Test that each kind of bad file raises ConfigError with a clear message."""
    with tempfile.TemporaryDirectory() as tmpdir:
        path = _write(tmpdir, text)
        with pytest.raises(ConfigError, match=message):
            load_config(path)


def test_unknown_key_lists_valid_keys():
    """Test that the error names the keys the section does accept."""
    with tempfile.TemporaryDirectory() as tmpdir:
        path = _write(tmpdir, "path:\n  n_lambda: 3\n")
        with pytest.raises(ConfigError) as exc_info:
            load_config(path)
    assert "lambda_min_ratio" in str(exc_info.value)
    assert "nlambda" in str(exc_info.value)


def test_missing_file():
    """Test that a missing file raises ConfigError."""
    with pytest.raises(ConfigError, match="Config file not found"):
        load_config("nonexistent/settings.yaml")


def test_to_dict_has_every_section():
    """Test that to_dict is keyed by section then field."""
    sections = GsmConfig().to_dict()
    assert set(sections) == {"solver", "gibbs", "copositivity", "quadrature", "path"}
    assert sections["gibbs"]["chains"] == 1
