"""Tests for reading and writing CSV datasets."""

import tempfile
from pathlib import Path

import numpy as np
import pytest

from src.gsm.io import read_dataset, write_dataset
from src.model.base import Dataset
from src.model.errors import DomainError


def _csv(tmpdir, text, name="data.csv"):
    path = Path(tmpdir) / name
    path.write_text(text)
    return path


def test_headerless_file():
    """Test that an all-numeric first row is data."""
    with tempfile.TemporaryDirectory() as tmpdir:
        data = read_dataset(_csv(tmpdir, "1,2\n3,4.5\n"))
    np.testing.assert_array_equal(data.x, [[1.0, 2.0], [3.0, 4.5]])
    np.testing.assert_array_equal(data.scale, [1.0, 1.0])


def test_header_row_is_detected():
    """Test that a first row with a non-number is skipped as a header."""
    with tempfile.TemporaryDirectory() as tmpdir:
        data = read_dataset(_csv(tmpdir, "gene_a,gene_b\n0,2\n3,4\n"))
    assert data.n == 2
    assert data.m == 2
    assert data.x[0, 0] == 0.0


def test_zeros_are_allowed():
    """Test that zeros are valid orthant data."""
    with tempfile.TemporaryDirectory() as tmpdir:
        data = read_dataset(_csv(tmpdir, "0,0\n0,1\n"))
    assert np.count_nonzero(data.x) == 1


@pytest.mark.parametrize(
    "text, message",
    [
        ("1,2\n3,abc\n", "Non-numeric value 'abc' at row 2, column 2"),
        ("x,y\n1,2\n3,abc\n", "Non-numeric value 'abc' at row 2, column 2"),
        ("1,2\n3,\n", "Missing value at row 2, column 2"),
        ("1,2\n-3,4\n", "Negative value -3.0 at row 2, column 1"),
        ("1,2\n3,4,5\n", "Ragged rows"),
        ("x,y\n", "has no data rows"),
        ("", "is empty"),
    ],
)
def test_bad_files(text, message):
    """Test that malformed files raise DomainError naming the problem."""
    with tempfile.TemporaryDirectory() as tmpdir:
        path = _csv(tmpdir, text)
        with pytest.raises(DomainError, match=message):
            read_dataset(path)


def test_missing_file():
    """Test that a missing file raises DomainError."""
    with pytest.raises(DomainError, match="Data file not found"):
        read_dataset("nonexistent/data.csv")


def test_real_support_accepts_negative_values():
    """Test that the real-support reader keeps negative entries."""
    with tempfile.TemporaryDirectory() as tmpdir:
        data = read_dataset(_csv(tmpdir, "1,-2\n3,4\n"), support="real")
    assert data.x[0, 1] == -2.0


def test_written_file_reads_back_exactly():
    """Test that write_dataset keeps full precision."""
    rng = np.random.default_rng(4)
    original = Dataset(x=rng.exponential(size=(6, 3)))
    with tempfile.TemporaryDirectory() as tmpdir:
        for header in (False, True):
            path = write_dataset(original, Path(tmpdir) / f"out_{header}.csv", header=header)
            data = read_dataset(path)
            np.testing.assert_array_equal(data.x, original.x)


def test_header_names():
    """Test that the optional header is x1..xm."""
    with tempfile.TemporaryDirectory() as tmpdir:
        path = write_dataset(Dataset(x=np.ones((2, 3))), Path(tmpdir) / "d.csv", header=True)
        first = path.read_text().splitlines()[0]
    assert first == "x1,x2,x3"
