"""Tabular output: CSV with a ``#`` comment header, or JSON with the same records."""

from __future__ import annotations

import datetime as _dt
import io
import json
from dataclasses import dataclass, field
from typing import Any

from . import __version__


@dataclass
class Table:
    columns: list[str]
    rows: list[list[Any]]
    params: dict[str, Any] = field(default_factory=dict)
    title: str = ""

    def column(self, name: str) -> list[Any]:
        i = self.columns.index(name)
        return [r[i] for r in self.rows]

    def records(self) -> list[dict[str, Any]]:
        return [dict(zip(self.columns, r)) for r in self.rows]


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _header_lines(table: Table, timestamp: bool) -> list[str]:
    lines = [f"# eomconv {__version__}"]
    if table.title:
        lines.append(f"# {table.title}")
    if table.params:
        lines.append("# params: " + " ".join(f"{k}={_fmt(v)}" for k, v in table.params.items()))
    if timestamp:
        lines.append("# generated: " + _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"))
    return lines


def to_csv(table: Table, timestamp: bool = True) -> str:
    buf = io.StringIO()
    for line in _header_lines(table, timestamp):
        buf.write(line + "\n")
    buf.write(",".join(table.columns) + "\n")
    for row in table.rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def to_json(table: Table, timestamp: bool = True) -> str:
    meta: dict[str, Any] = {"artifact": "eomconv", "version": __version__, "title": table.title}
    meta["params"] = table.params
    if timestamp:
        meta["generated"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    doc = {"meta": meta, "columns": table.columns, "records": table.records()}
    return json.dumps(doc, indent=2, allow_nan=True) + "\n"


def render(table: Table, fmt: str = "csv", timestamp: bool = True) -> str:
    if fmt == "csv":
        return to_csv(table, timestamp)
    if fmt == "json":
        return to_json(table, timestamp)
    raise ValueError(f"unknown format {fmt!r}")


def read_csv(text: str) -> Table:
    """Parse CSV written by :func:`to_csv`; numeric cells become floats."""
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    columns = lines[0].split(",")
    rows = []
    for ln in lines[1:]:
        row = []
        for cell in ln.split(","):
            try:
                row.append(float(cell))
            except ValueError:
                row.append(cell)
        rows.append(row)
    return Table(columns, rows)
