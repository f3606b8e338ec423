"""Report container and deterministic JSON / CSV rendering.

JSON output preserves field order and formats every float with 17
significant digits, so identical runs produce byte-identical documents.
Complex values appear as {"re": ..., "im": ...} objects in JSON and as
<name>_re / <name>_im column pairs in CSV.  Non-finite floats are rendered
as the quoted strings "inf", "-inf", "nan".
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .spectral import SpectralConfig

__all__ = ["Report", "render_json", "render_csv", "render"]


@dataclass
class Report:
    """Result of one command: config echo, parameters, rows, pass/fail tally."""

    kind: str
    config: SpectralConfig
    params: dict
    rows: list[dict]
    summary: dict = field(default_factory=lambda: {"pass": 0, "fail": 0})


def _format_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return f"{x:.17g}"


def _json_value(value) -> str:
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, bool) or isinstance(value, np.bool_):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, enum.Enum):
        return json.dumps(str(value.value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _format_float(float(value))
    if isinstance(value, (complex, np.complexfloating)):
        c = complex(value)
        return f'{{"re": {_format_float(c.real)}, "im": {_format_float(c.imag)}}}'
    if isinstance(value, dict):
        body = ", ".join(f"{json.dumps(str(k))}: {_json_value(v)}" for k, v in value.items())
        return f"{{{body}}}"
    if isinstance(value, (list, tuple, np.ndarray)):
        body = ", ".join(_json_value(v) for v in list(value))
        return f"[{body}]"
    raise TypeError(f"cannot serialize {value!r} ({type(value).__name__})")


def render_json(report: Report) -> str:
    doc = {
        "kind": report.kind,
        "config": {"a": report.config.a, "b": report.config.b, "k": report.config.k},
        "params": report.params,
        "rows": report.rows,
        "summary": report.summary,
    }
    return _json_value(doc) + "\n"


def _flatten_row(row: dict) -> dict:
    flat: dict[str, object] = {}
    for key, value in row.items():
        if isinstance(value, (complex, np.complexfloating)) and not isinstance(value, (float, int)):
            c = complex(value)
            flat[f"{key}_re"] = c.real
            flat[f"{key}_im"] = c.imag
        elif isinstance(value, dict) and set(value) == {"re", "im"}:
            flat[f"{key}_re"] = value["re"]
            flat[f"{key}_im"] = value["im"]
        else:
            flat[key] = value
    return flat


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        if any(ch in value for ch in ',"\n'):
            return '"' + value.replace('"', '""') + '"'
        return value
    if isinstance(value, bool) or isinstance(value, np.bool_):
        return "true" if value else "false"
    if isinstance(value, enum.Enum):
        return str(value.value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        x = float(value)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return f"{x:.17g}"
    raise TypeError(f"cannot serialize {value!r} in CSV")


def render_csv(report: Report) -> str:
    flat_rows = [_flatten_row(r) for r in report.rows]
    header: list[str] = []
    for row in flat_rows:
        for key in row:
            if key not in header:
                header.append(key)
    lines = [",".join(header)]
    for row in flat_rows:
        lines.append(",".join(_csv_cell(row.get(key)) for key in header))
    return "\n".join(lines) + "\n"


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "csv":
        return render_csv(report)
    raise ValueError(f"unknown format {fmt!r}")
