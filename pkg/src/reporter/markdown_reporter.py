"""Markdown format reporter."""

from typing import Any

from .base import BaseReporter, RunReport

PREVIEW_ROWS = 20


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


class MarkdownReporter(BaseReporter):
    """Reporter that generates a human-readable run summary."""

    @property
    def file_extension(self) -> str:
        return "md"

    def generate_report(self, report: RunReport) -> str:
        lines = [f"# {report.title}", ""]

        if report.summary:
            lines.append("## Summary")
            lines.append("")
            lines.append("| Metric | Value |")
            lines.append("|--------|-------|")
            for key, value in report.summary.items():
                lines.append(f"| {key} | {_cell(value)} |")
            lines.append("")

        if report.table is not None and len(report.table):
            table = report.table.head(PREVIEW_ROWS)
            lines.append(f"## {report.kind.capitalize()} table")
            lines.append("")
            lines.append("| " + " | ".join(map(str, table.columns)) + " |")
            lines.append("|" + "---|" * len(table.columns))
            for row in table.itertuples(index=False):
                lines.append("| " + " | ".join(_cell(v) for v in row) + " |")
            if len(report.table) > PREVIEW_ROWS:
                lines.append("")
                lines.append(f"_{len(report.table) - PREVIEW_ROWS} more row(s) omitted._")
            lines.append("")

        return "\n".join(lines)
