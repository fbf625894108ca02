"""Integration tests for the reporters behind the roc command."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[2]


def _run_roc(prefix, config, *extra):
    """Run a tiny roc experiment with the given extra arguments."""
    return subprocess.run(
        [
            sys.executable, "-m", "src.gsm.cli", "roc",
            "--model", "1:1", "--centered", "--graph", "block:1:2",
            "--m", "6", "--n", "80", "--h", "pow:1:3",
            "--trials", "1", "--num-k0", "1", "--nlambda", "4",
            "--seed", "5", "--out-prefix", str(prefix), "--config", str(config),
            *extra,
        ],
        capture_output=True,
        text=True,
        cwd=ROOT,
    )


def _config(tmpdir):
    path = Path(tmpdir) / "fast.yaml"
    path.write_text("gibbs:\n  burn_in: 20\n  thin: 1\n")
    return path


def test_cli_writes_requested_summaries():
    """Test that --report json,md adds one summary file per format."""
    with tempfile.TemporaryDirectory() as tmpdir:
        prefix = Path(tmpdir) / "exp"
        result = _run_roc(prefix, _config(tmpdir), "--report", "json,md")
        assert result.returncode == 0, result.stderr

        json_summary = Path(tmpdir) / "exp.summary.json"
        md_summary = Path(tmpdir) / "exp.summary.md"
        assert json_summary.exists()
        assert md_summary.exists()

        document = json.loads(json_summary.read_text())
        assert document["kind"] == "auc"
        assert document["schema"] == "gsm/1"

        markdown = md_summary.read_text()
        assert markdown.startswith("# ROC experiment exp")
        assert "| mean |" in markdown
        assert "## Auc table" in markdown

        manifest = json.loads((Path(tmpdir) / "exp.manifest.json").read_text())
        assert str(json_summary) in manifest["outputs"]
        assert str(md_summary) in manifest["outputs"]


def test_cli_without_report_writes_only_defaults():
    """Test that no summary files are written when --report is omitted."""
    with tempfile.TemporaryDirectory() as tmpdir:
        result = _run_roc(Path(tmpdir) / "exp", _config(tmpdir))
        assert result.returncode == 0, result.stderr
        names = sorted(p.name for p in Path(tmpdir).iterdir())
    assert names == ["exp.auc.json", "exp.manifest.json", "exp.roc.csv", "fast.yaml"]


def test_cli_csv_summary_matches_curve():
    """Test that a csv summary repeats the averaged curve."""
    with tempfile.TemporaryDirectory() as tmpdir:
        prefix = Path(tmpdir) / "exp"
        result = _run_roc(prefix, _config(tmpdir), "--report", "csv", "--grid-size", "5")
        assert result.returncode == 0, result.stderr
        summary = (Path(tmpdir) / "exp.summary.csv").read_text()
        curve = (Path(tmpdir) / "exp.roc.csv").read_text()
    assert summary == curve
    assert len(curve.splitlines()) == 6
