"""Deterministic output envelopes rendered as plain tables, JSON or CSV."""
from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field
from typing import Any

from . import __version__

SCHEMA_VERSION = 1
FORMATS = ("table", "json", "csv")


@dataclass
class Table:
    name: str
    columns: list[str]
    rows: list[list[Any]] = field(default_factory=list)

    def add(self, *values: Any) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"row has {len(values)} values, table {self.name!r} has {len(self.columns)} columns")
        self.rows.append(list(values))


@dataclass
class Envelope:
    command: list[str]
    inputs: dict
    tables: list[Table]
    passed: bool | None = None

    @property
    def digest(self) -> str:
        blob = json.dumps(self.inputs, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def header(self, fmt: str) -> dict:
        head = {
            "schema_version": SCHEMA_VERSION,
            "engine_version": __version__,
            "command": " ".join(self.command),
            "input_digest": self.digest,
            "format": fmt,
        }
        if self.passed is not None:
            head["status"] = "PASS" if self.passed else "FAIL"
        return head

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return _render_json(self)
        if fmt == "csv":
            return _render_csv(self)
        if fmt == "table":
            return _render_table(self)
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "PASS" if value else "FAIL"
    if isinstance(value, (list, tuple)):
        return " ".join(_cell(v) for v in value)
    if value is None:
        return "-"
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    return str(value)


def _render_json(env: Envelope) -> str:
    doc = env.header("json")
    doc["payload"] = [
        {
            "name": t.name,
            "columns": t.columns,
            "rows": [dict(zip(t.columns, map(_json_value, row))) for row in t.rows],
        }
        for t in env.tables
    ]
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def _render_csv(env: Envelope) -> str:
    buf = io.StringIO()
    for key, value in env.header("csv").items():
        buf.write(f"# {key}: {value}\n")
    writer = csv.writer(buf, lineterminator="\n")
    for t in env.tables:
        buf.write(f"# table: {t.name}\n")
        writer.writerow(t.columns)
        for row in t.rows:
            writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _render_table(env: Envelope) -> str:
    lines = [f"{key}: {value}" for key, value in env.header("table").items()]
    for t in env.tables:
        cells = [[_cell(v) for v in row] for row in t.rows]
        widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(t.columns)]
        lines.append("")
        lines.append(f"[{t.name}]")
        lines.append("  ".join(c.ljust(w) for c, w in zip(t.columns, widths)).rstrip())
        lines.append("  ".join("-" * w for w in widths))
        for r in cells:
            lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"
