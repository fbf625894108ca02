"""Run manifest written next to the outputs of every command."""

import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from ..reporter.base import RunReport
from ..reporter.json_reporter import JSONReporter
from . import __version__

SCHEMA = "gsm/1"


def manifest_path(output: Union[str, Path]) -> Path:
    """``<stem>.manifest.json`` in the directory of ``output``."""
    output = Path(output)
    return output.with_name(f"{output.stem}.manifest.json")


@dataclass
class RunManifest:
    """What was run, with which settings, and what it produced."""

    command: str
    config: Dict[str, Any] = field(default_factory=dict)
    seeds: List[int] = field(default_factory=list)
    inputs: List[str] = field(default_factory=list)
    outputs: List[str] = field(default_factory=list)
    failures: int = 0
    version: str = __version__
    started: float = field(default_factory=time.perf_counter)
    wall_time_s: Optional[float] = None

    def add_output(self, path: Union[str, Path]) -> None:
        self.outputs.append(str(path))

    def finish(self) -> None:
        self.wall_time_s = time.perf_counter() - self.started

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema": SCHEMA,
            "kind": "manifest",
            "command": self.command,
            "config": self.config,
            "seeds": self.seeds,
            "version": self.version,
            "wall_time_s": self.wall_time_s,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "failures": self.failures,
        }

    def write(self, output: Union[str, Path]) -> Path:
        """Write the manifest beside ``output``."""
        if self.wall_time_s is None:
            self.finish()
        target = manifest_path(output)
        reporter = JSONReporter(target.parent)
        report = RunReport(
            kind="manifest", title=f"gsm {self.command}", document=self.to_dict()
        )
        return reporter.write_to_file(report, target.name)
