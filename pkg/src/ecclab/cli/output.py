"""Record writers: CSV or JSON lines, floats always with 9 decimals.

Every record carries ``schema_version`` as its first field.
"""
from __future__ import annotations

import csv
import io
import json
from typing import Any, Iterable, Sequence

SCHEMA_VERSION = 1


def fmt_float(x: float) -> str:
    return f"{x:.9f}"


def _csv_cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_float(v)
    if isinstance(v, (list, tuple)):
        return ";".join(_csv_cell(x) for x in v)
    if isinstance(v, dict):
        return json_value(v)
    return "" if v is None else str(v)


def json_value(v: Any) -> str:
    """JSON text with floats in fixed 9-decimal notation and keys in insertion order."""
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return fmt_float(v)
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {json_value(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(json_value(x) for x in v) + "]"
    raise TypeError(f"cannot serialise {type(v).__name__}")


def render(records: Iterable[dict], columns: Sequence[str], fmt: str) -> str:
    cols = ["schema_version", *columns]
    rows = [{"schema_version": SCHEMA_VERSION, **r} for r in records]
    if fmt == "json":
        return "".join(json_value({c: r.get(c) for c in cols}) + "\n" for r in rows)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow([_csv_cell(r.get(c)) for c in cols])
    return buf.getvalue()


def render_document(doc: dict) -> str:
    return json_value({"schema_version": SCHEMA_VERSION, **doc}) + "\n"
