"""Deterministic tabular output: CSV and JSON with fixed float formatting.

Floats are always written with 17 significant digits in scientific
notation, so identical inputs produce byte-identical files and every value
round-trips exactly through the readers below.
"""
import csv
import io
import json
from dataclasses import dataclass, field
from typing import List, Union

from .errors import ConfigError

Cell = Union[int, float, str]

FORMATS = ("csv", "json")


@dataclass
class Table:
    columns: List[str]
    rows: List[List[Cell]] = field(default_factory=list)

    def append(self, *values: Cell):
        if len(values) != len(self.columns):
            raise ValueError(f"expected {len(self.columns)} cells, got {len(values)}")
        self.rows.append(list(values))

    def column(self, name: str) -> List[Cell]:
        q = self.columns.index(name)
        return [row[q] for row in self.rows]


def format_float(x: float) -> str:
    """17 significant digits, scientific notation; enough to round-trip a double."""
    return f"{x:.16e}"


def _format_cell(value: Cell) -> str:
    if isinstance(value, bool):
        raise ConfigError("boolean cells are not part of the table format")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def dumps_csv(table: Table) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_format_cell(v) for v in row])
    return out.getvalue()


def dumps_json(table: Table) -> str:
    """JSON mirror of the CSV table; floats keep the fixed scientific format.

    json.dumps cannot control float rendering, so the document is emitted
    directly; the value grammar is limited to strings, ints, and floats.
    """
    lines = ["{", '  "columns": ' + json.dumps(table.columns) + ",", '  "rows": [']
    body = []
    for row in table.rows:
        cells = []
        for value in row:
            if isinstance(value, bool):
                raise ConfigError("boolean cells are not part of the table format")
            if isinstance(value, int):
                cells.append(str(value))
            elif isinstance(value, float):
                cells.append(format_float(value))
            else:
                cells.append(json.dumps(value))
        body.append("    [" + ", ".join(cells) + "]")
    lines.append(",\n".join(body))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps(table: Table, fmt: str) -> str:
    if fmt == "csv":
        return dumps_csv(table)
    if fmt == "json":
        return dumps_json(table)
    raise ConfigError(f"unknown output format {fmt!r}; expected one of {FORMATS}")


def _parse_cell(text: str) -> Cell:
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def loads_csv(text: str) -> Table:
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows:
        raise ConfigError("empty CSV document")
    table = Table(columns=rows[0])
    for raw in rows[1:]:
        table.append(*[_parse_cell(cell) for cell in raw])
    return table


def loads_json(text: str) -> Table:
    doc = json.loads(text)
    if not isinstance(doc, dict) or "columns" not in doc or "rows" not in doc:
        raise ConfigError("JSON table must be an object with 'columns' and 'rows'")
    table = Table(columns=list(doc["columns"]))
    for row in doc["rows"]:
        table.append(*row)
    return table


def loads(text: str, fmt: str) -> Table:
    if fmt == "csv":
        return loads_csv(text)
    if fmt == "json":
        return loads_json(text)
    raise ConfigError(f"unknown input format {fmt!r}; expected one of {FORMATS}")


def read_table(path: str, fmt: str = None) -> Table:
    """Parse a table file previously produced by this package."""
    if fmt is None:
        fmt = "json" if str(path).endswith(".json") else "csv"
    with open(path, "r", encoding="utf-8") as handle:
        return loads(handle.read(), fmt)
