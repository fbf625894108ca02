"""Tests for JSONReporter class."""

import json
import math
import tempfile
from pathlib import Path

import numpy as np

from src.reporter import RunReport
from src.reporter.json_reporter import JSONReporter, to_jsonable


def test_json_reporter_file_extension():
    """Test that JSONReporter returns correct file extension."""
    with tempfile.TemporaryDirectory() as tmpdir:
        reporter = JSONReporter(Path(tmpdir))
        assert reporter.file_extension == "json"
        assert reporter.default_filename == "results.json"


def test_to_jsonable_converts_numpy_and_non_finite():
    """Test conversion of numpy values and NaN/inf."""
    value = to_jsonable(
        {
            "K": np.eye(2),
            "n": np.int64(3),
            "x": np.float64(0.5),
            "sd": math.nan,
            "ratio": math.inf,
            "pairs": [(0, 1)],
            1: "key",
        }
    )

    assert value == {
        "K": [[1.0, 0.0], [0.0, 1.0]],
        "n": 3,
        "x": 0.5,
        "sd": None,
        "ratio": None,
        "pairs": [[0, 1]],
        "1": "key",
    }


def test_json_reporter_generate_report():
    """Test JSON report generation writes the document as is."""
    with tempfile.TemporaryDirectory() as tmpdir:
        reporter = JSONReporter(Path(tmpdir))
        report = RunReport("auc", "ROC", document={"schema": "gsm/1", "mean": np.float64(0.8)})

        data = json.loads(reporter.generate_report(report))

        assert data == {"schema": "gsm/1", "mean": 0.8}


def test_json_reporter_write_to_file():
    """Test writing JSON report to a custom file."""
    with tempfile.TemporaryDirectory() as tmpdir:
        reporter = JSONReporter(Path(tmpdir))
        report = RunReport("estimate", "Estimate", document={"lambda": 0.1, "K": np.eye(3)})

        output_path = reporter.write_to_file(report, "fit.json")

        assert output_path.exists()
        assert output_path.name == "fit.json"
        with open(output_path) as f:
            data = json.load(f)
        assert data["K"][2] == [0.0, 0.0, 1.0]
