"""Base reporter class and the report payload shared by every writer."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

import pandas as pd


@dataclass
class RunReport:
    """Outputs of one command.

    Args:
        kind: Document kind (``estimate``, ``truth``, ``auc``, ``univariate``)
        title: Heading for human-readable formats
        document: JSON document written as is
        table: Tabular output (ROC curve, study rows, path records)
        summary: Key metrics shown in summaries
    """

    kind: str
    title: str
    document: Dict[str, Any] = field(default_factory=dict)
    table: Optional[pd.DataFrame] = None
    summary: Dict[str, Any] = field(default_factory=dict)


class BaseReporter(ABC):
    """Abstract base class for all report generators."""

    def __init__(self, output_dir: Path = Path("reports")):
        """Initialize reporter with output directory.

        Args:
            output_dir: Directory to write reports to
        """
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)

    @property
    @abstractmethod
    def file_extension(self) -> str:
        """File extension for this report format."""
        pass

    @property
    def default_filename(self) -> str:
        return f"results.{self.file_extension}"

    @abstractmethod
    def generate_report(self, report: RunReport) -> str:
        """Render the report content."""
        pass

    def write_to_file(self, report: RunReport, filename: Optional[str] = None) -> Path:
        """Generate and write report to file.

        Args:
            report: Payload to render
            filename: Optional custom filename

        Returns:
            Path to the generated report file
        """
        content = self.generate_report(report)

        if filename is None:
            filename = self.default_filename

        output_path = self.output_dir / filename
        with open(output_path, "w", encoding="utf-8", newline="") as f:
            f.write(content)

        return output_path
