"""Delimited output: tables of named columns emitted as CSV or JSON,
with exact float round-tripping and deterministic bytes."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

FORMATS = ("csv", "json")

Cell = int | float | str


def format_cell(value: Cell) -> str:
    """Render one cell; floats use %.17g so parsing recovers them exactly."""
    if isinstance(value, bool):
        raise TypeError("boolean cells are not supported")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def parse_cell(text: str) -> Cell:
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


@dataclass(frozen=True)
class Table:
    """Header names carry the symbol and unit, e.g. "cold_energy[hbar=1]"."""

    columns: tuple[str, ...]
    rows: tuple[tuple[Cell, ...], ...]

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError("row length does not match the header")


def emit_csv(table: Table) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_cell(cell) for cell in row])
    return buffer.getvalue()


def parse_csv(text: str) -> Table:
    reader = csv.reader(io.StringIO(text))
    lines = list(reader)
    if not lines:
        raise ValueError("empty CSV document")
    columns = tuple(lines[0])
    rows = tuple(tuple(parse_cell(cell) for cell in line) for line in lines[1:])
    return Table(columns, rows)


def emit_json(table: Table) -> str:
    # Floats go through the same %.17g rendering as CSV so the two formats
    # stay value-identical; json round-trips the strings losslessly.
    document = {
        "columns": list(table.columns),
        "rows": [[format_cell(cell) for cell in row] for row in table.rows],
    }
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def parse_json(text: str) -> Table:
    document = json.loads(text)
    columns = tuple(document["columns"])
    rows = tuple(tuple(parse_cell(cell) for cell in row) for row in document["rows"])
    return Table(columns, rows)


def emit(table: Table, fmt: str) -> str:
    if fmt == "csv":
        return emit_csv(table)
    if fmt == "json":
        return emit_json(table)
    raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")


def parse(text: str, fmt: str) -> Table:
    if fmt == "csv":
        return parse_csv(text)
    if fmt == "json":
        return parse_json(text)
    raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")


def write(table: Table, path: str | None, fmt: str) -> str:
    """Emit and, if a path is given, write; returns the emitted text."""
    text = emit(table, fmt)
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    return text
