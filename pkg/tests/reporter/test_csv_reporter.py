"""Tests for CSVReporter class."""

import tempfile
from pathlib import Path

import pandas as pd
import pytest

from src.reporter import RunReport
from src.reporter.csv_reporter import CSVReporter


def test_csv_reporter_writes_table_without_index():
    """Test that the table is written with a header and no index."""
    with tempfile.TemporaryDirectory() as tmpdir:
        reporter = CSVReporter(Path(tmpdir))
        table = pd.DataFrame({"fpr": [0.0, 1.0], "tpr": [0.0, 1.0]})

        output_path = reporter.write_to_file(RunReport("auc", "ROC", table=table), "roc.csv")

        assert output_path.read_text().splitlines() == ["fpr,tpr", "0.0,0.0", "1.0,1.0"]
        pd.testing.assert_frame_equal(pd.read_csv(output_path), table)


def test_csv_reporter_accepts_records():
    """Test that a list of records is converted to a table."""
    with tempfile.TemporaryDirectory() as tmpdir:
        reporter = CSVReporter(Path(tmpdir))
        report = RunReport("univariate", "Study", table=[{"param0": 1.0, "status": "ok"}])

        content = reporter.generate_report(report)

        assert content.splitlines() == ["param0,status", "1.0,ok"]


def test_csv_reporter_requires_table():
    """Test that reports without a table are rejected."""
    with tempfile.TemporaryDirectory() as tmpdir:
        reporter = CSVReporter(Path(tmpdir))

        with pytest.raises(ValueError, match="no table"):
            reporter.generate_report(RunReport("estimate", "Estimate"))
