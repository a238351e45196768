"""Serialización de los documentos de salida: tabla (rich), JSON y CSV."""

import csv
from enum import Enum
import io
from typing import Any, Final

from pydantic import BaseModel, TypeAdapter
from rich.console import Console
from rich.table import Table

from models.document import SweepRow

CSV_FLOAT_FORMAT: Final = ".17g"
TABLE_WIDTH: Final = 120

_SWEEP_ADAPTER: Final = TypeAdapter(list[SweepRow])


class OutputFormat(str, Enum):
    TABLE = "table"
    JSON = "json"
    CSV = "csv"


def format_value(value: Any) -> str:  # noqa: ANN401
    """Texto de un valor escalar; los floats llevan 17 cifras significativas."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, CSV_FLOAT_FORMAT)
    if value is None:
        return ""
    return str(value)


def flatten(data: Any, prefix: str = "") -> list[tuple[str, Any]]:  # noqa: ANN401
    """Aplana dicts y listas anidados en pares (`ruta.con.puntos`, valor)."""
    if isinstance(data, dict):
        items: list[tuple[str, Any]] = []
        for key, value in data.items():
            items.extend(flatten(value, f"{prefix}.{key}" if prefix else str(key)))
        return items
    if isinstance(data, list):
        items = []
        for index, value in enumerate(data):
            items.extend(flatten(value, f"{prefix}[{index}]"))
        return items
    return [(prefix, data)]


def _write_csv(header: list[str], rows: list[list[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(value) for value in row])
    return buffer.getvalue()


def _render_tables(tables: list[Table]) -> str:
    console = Console(
        file=io.StringIO(), record=True, width=TABLE_WIDTH, color_system=None, soft_wrap=True
    )
    for table in tables:
        console.print(table)
    return console.export_text()


def _key_value_table(title: str, pairs: list[tuple[str, Any]]) -> Table:
    table = Table(title=title, show_header=True, header_style="bold")
    table.add_column("campo")
    table.add_column("valor", justify="right")
    for key, value in pairs:
        table.add_row(key, format_value(value))
    return table


def _document_tables(document: BaseModel) -> list[Table]:
    """Una tabla por sección de primer nivel del documento."""
    data = document.model_dump(mode="json", exclude_none=True)
    scalars = [(key, value) for key, value in data.items() if not isinstance(value, dict)]
    tables = [_key_value_table("general", scalars)] if scalars else []
    for key, value in data.items():
        if isinstance(value, dict):
            tables.append(_key_value_table(key, flatten(value)))
    return tables


def render_document(document: BaseModel, fmt: OutputFormat) -> str:
    """Serializa un documento de `analyze`, `simulate` o `verify`.

    JSON conserva cada float con su representación exacta más corta; CSV escribe
    pares `campo,valor` con 17 cifras significativas.
    """
    if fmt is OutputFormat.JSON:
        return document.model_dump_json(indent=2, exclude_none=True) + "\n"
    if fmt is OutputFormat.CSV:
        pairs = flatten(document.model_dump(mode="json", exclude_none=True))
        return _write_csv(["field", "value"], [[key, value] for key, value in pairs])
    return _render_tables(_document_tables(document))


def render_sweep(rows: list[SweepRow], fmt: OutputFormat) -> str:
    """Serializa las filas de `sweep` en el orden recibido."""
    if fmt is OutputFormat.JSON:
        return _SWEEP_ADAPTER.dump_json(rows, indent=2, exclude_none=True).decode() + "\n"

    columns = list(SweepRow.model_fields)
    if rows and rows[0].separable_per_cited_bound is None:
        columns.remove("separable_per_cited_bound")
    values = [[getattr(row, column) for column in columns] for row in rows]
    if fmt is OutputFormat.CSV:
        return _write_csv(columns, values)

    title = f"barrido de {rows[0].parameter}" if rows else "barrido"
    table = Table(title=title, show_header=True, header_style="bold")
    for column in columns:
        table.add_column(column, justify="left" if column == "parameter" else "right")
    for row in values:
        table.add_row(*(format_value(value) for value in row))
    return _render_tables([table])
