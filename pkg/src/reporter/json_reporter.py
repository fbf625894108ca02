"""JSON format reporter."""

import json
import math
from typing import Any

import numpy as np

from .base import BaseReporter, RunReport


def to_jsonable(value: Any) -> Any:
    """Convert numpy scalars and arrays; non-finite floats become ``null``."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


class JSONReporter(BaseReporter):
    """Reporter that writes the report document as JSON."""

    @property
    def file_extension(self) -> str:
        return "json"

    def generate_report(self, report: RunReport) -> str:
        return json.dumps(to_jsonable(report.document), indent=2) + "\n"
