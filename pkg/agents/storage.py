# agents/storage.py

from __future__ import annotations
from typing import Any, Dict, Optional
import json
from pathlib import Path
from datetime import datetime, timezone

"""
Imports:
- json: writes the report and the run log.
- pathlib.Path: path-safe file handling across OSs.
- datetime: stamps the run log (never the report).
"""

Report = Dict[str, Any]


class StorageAgent:
    """
    StorageAgent
    ------------
    Writes final outputs:
    - the JSON report (deterministic: same config and seed give the same bytes)
    - a JSON run log next to it (timestamp, timings, file names)

    Everything that changes from run to run goes into the log, so the report
    can be compared byte for byte.
    """

    def __init__(self, ensure_dirs: bool = True):
        # Auto-create the output directory unless disabled.
        self.ensure_dirs = ensure_dirs

    def _ensure_parent(self, path: Path) -> Path:
        if self.ensure_dirs:
            path.parent.mkdir(parents=True, exist_ok=True)
        return path

    @staticmethod
    def dumps(report: Report) -> str:
        """Canonical text of a report: sorted keys, fixed indentation, UTF-8, trailing newline."""
        return json.dumps(report, ensure_ascii=False, indent=2, sort_keys=True) + "\n"

    @staticmethod
    def log_path_for(out_path: Path) -> Path:
        return out_path.with_name(f"{out_path.stem}.log.json")

    # -------------------------
    # PERSIST
    # -------------------------
    def persist(self, out_path: Path, report: Report, timings: Optional[Dict[str, float]] = None) -> Dict[str, str]:
        """
        Write the report and its run log; return both paths.
        The report is written in one go so a failed run never leaves half a file.
        """
        out_path = self._ensure_parent(Path(out_path))
        text = self.dumps(report)
        out_path.write_text(text, encoding="utf-8")

        log_obj = {
            "generated_at": datetime.now(timezone.utc).isoformat().replace("+00:00", "Z"),
            "command": report.get("command"),
            "algebra": report.get("algebra"),
            "exit_code": report.get("exit_code"),
            "timings": dict(sorted((timings or {}).items())),
            "files": {"report": str(out_path)},
        }
        log_path = self.log_path_for(out_path)
        log_path.write_text(json.dumps(log_obj, ensure_ascii=False, indent=2), encoding="utf-8")

        return {"report": str(out_path), "log": str(log_path)}
