"""Output writers shared by every gsm command."""

from .base import BaseReporter, RunReport
from .csv_reporter import CSVReporter
from .factory import ReporterFactory, create_reporters
from .json_reporter import JSONReporter, to_jsonable
from .markdown_reporter import MarkdownReporter

__all__ = [
    "BaseReporter",
    "CSVReporter",
    "JSONReporter",
    "MarkdownReporter",
    "ReporterFactory",
    "RunReport",
    "create_reporters",
    "to_jsonable",
]
