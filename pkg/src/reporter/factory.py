"""Lookup of report writers by the names accepted on ``--report``."""

from pathlib import Path
from typing import Dict, List, Type

from .base import BaseReporter
from .csv_reporter import CSVReporter
from .json_reporter import JSONReporter
from .markdown_reporter import MarkdownReporter


class ReporterFactory:
    """Maps a format name to the writer for estimate, AUC and univariate reports."""

    _REPORTERS: Dict[str, Type[BaseReporter]] = {
        "json": JSONReporter,
        "csv": CSVReporter,
        "md": MarkdownReporter,
        "markdown": MarkdownReporter,
    }

    @classmethod
    def get_available_formats(cls) -> List[str]:
        return list(cls._REPORTERS.keys())

    @classmethod
    def create_reporter(
        cls, format_name: str, output_dir: Path = Path("reports")
    ) -> BaseReporter:
        """Build the writer that renders a ``RunReport`` in ``format_name``.

        The same writer handles every report kind; it picks its layout
        from ``RunReport.kind``. Names are matched case-insensitively.

        Raises:
            ValueError: If no writer is registered under ``format_name``
        """
        key = format_name.lower().strip()
        if key not in cls._REPORTERS:
            raise ValueError(
                f"Unsupported format '{key}' for gsm reports; "
                f"choose from {', '.join(cls.get_available_formats())}"
            )
        return cls._REPORTERS[key](output_dir)


def create_reporters(
    format_list: str, output_dir: Path = Path("reports")
) -> List[BaseReporter]:
    """Writers for a ``--report`` value such as ``"json,md"``, empty names skipped."""
    formats = [fmt.strip() for fmt in format_list.split(",") if fmt.strip()]
    return [ReporterFactory.create_reporter(name, output_dir) for name in formats]
