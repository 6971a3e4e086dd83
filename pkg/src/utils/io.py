"""
Output helpers shared by the library and the CLI.

- `log` prints the short emoji status lines to stderr (stdout carries JSON/CSV)
- `to_jsonable` turns reports, enums, words and PrecisionReals into plain data
- `RunResult` is the envelope every subcommand emits
"""

from __future__ import annotations

import dataclasses
import enum
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

import pandas as pd
from mpmath import mpf, nstr

SCHEMA_VERSION = 1

_ICONS = {"info": "🔹", "ok": "✅", "warn": "⚠️", "error": "❌"}
_verbose = True


def set_verbose(flag: bool) -> None:
    global _verbose
    _verbose = flag


def log(message: str, level: str = "info") -> None:
    if not _verbose and level in ("info", "ok"):
        return
    print(f"{_ICONS.get(level, '')} {message}", file=sys.stderr)


def to_jsonable(obj: Any, digits: int = 20) -> Any:
    """Recursively convert toolkit objects into JSON-serializable data."""
    if isinstance(obj, pd.DataFrame):
        return to_jsonable(obj.to_dict(orient="records"), digits)
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict(digits=digits), digits)
    if isinstance(obj, enum.Enum):
        return obj.value
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name), digits) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v, digits) for v in obj]
    if isinstance(obj, mpf):
        return nstr(obj, digits)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Path):
        return str(obj)
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    return obj


@dataclass
class RunResult:
    subcommand: str
    inputs: dict[str, Any]
    outputs: Any
    diagnostics: dict[str, Any] = field(default_factory=dict)

    def to_json(self, digits: int = 20, indent: int | None = 2) -> str:
        # wall-clock timings go to stderr only, so equal runs give equal JSON
        diagnostics = {k: v for k, v in self.diagnostics.items() if k != "timings"}
        payload = {
            "schema_version": SCHEMA_VERSION,
            "subcommand": self.subcommand,
            "inputs": to_jsonable(self.inputs, digits),
            "outputs": to_jsonable(self.outputs, digits),
            "diagnostics": to_jsonable(diagnostics, digits),
        }
        return json.dumps(payload, indent=indent, sort_keys=True)


def emit_json(result: RunResult, digits: int = 20, stream=None) -> None:
    timings = result.diagnostics.get("timings")
    if timings:
        log(f"Timings (s): {timings}")
    print(result.to_json(digits), file=stream or sys.stdout)


def write_table(df: pd.DataFrame, out: str | Path | None = None) -> Path | None:
    """Write a DataFrame as CSV to `out`, or to stdout when `out` is None."""
    if out is None:
        df.to_csv(sys.stdout, index=False)
        return None
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(out, index=False)
    log(f"Saved {len(df)} rows → {out}", "ok")
    return out
