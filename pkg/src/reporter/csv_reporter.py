"""CSV format reporter."""

import pandas as pd

from .base import BaseReporter, RunReport


class CSVReporter(BaseReporter):
    """Reporter that writes the report table with pandas."""

    @property
    def file_extension(self) -> str:
        return "csv"

    def generate_report(self, report: RunReport) -> str:
        if report.table is None:
            raise ValueError(f"The {report.kind} report has no table to write as CSV")
        table = report.table
        if not isinstance(table, pd.DataFrame):
            table = pd.DataFrame(table)
        return table.to_csv(index=False)
