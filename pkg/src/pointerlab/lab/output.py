"""CSV and JSON rendering of sweep results.

Floats are written with 17 significant digits, which round-trips every
double exactly.  Undefined values (``None``) become an empty CSV field or
JSON ``null``.  The JSON ``metadata`` carries a timestamp and wall time;
those two keys are the only run-dependent bytes.
"""

from __future__ import annotations

import datetime as _dt
import json
import math
import os
import sys

from ..errors import InvalidArgumentError
from .config import ExperimentConfig, Format
from .experiments import SweepResult

VOLATILE_KEYS = ("timestamp", "wall_time_s")


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise InvalidArgumentError(f"cannot serialize non-finite value {x!r}")
    s = format(x, ".17g")
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def _scalar(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, int):
        return str(v)
    return format_float(float(v))


def to_csv(result: SweepResult) -> str:
    lines = [",".join(result.columns)]
    for row in result.rows:
        lines.append(",".join(_scalar(row[c]) for c in result.columns))
    return "\n".join(lines) + "\n"


def _json(v, indent: int = 0) -> str:
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_json(val, indent + 1)}" for k, val in v.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(v, (list, tuple)):
        if not v:
            return "[]"
        if all(not isinstance(x, (dict, list, tuple)) for x in v):
            return "[" + ", ".join(_json(x) for x in v) + "]"
        return "[\n" + ",\n".join(pad + _json(x, indent + 1) for x in v) + "\n" + end + "]"
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format_float(v)
    if isinstance(v, str):
        return json.dumps(v)
    # numpy scalars
    if hasattr(v, "item"):
        return _json(v.item(), indent)
    raise InvalidArgumentError(f"cannot serialize {type(v).__name__}")


def to_json(result: SweepResult, timestamp: bool = True) -> str:
    meta = dict(result.metadata)
    if timestamp:
        meta["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    else:
        for k in VOLATILE_KEYS:
            meta.pop(k, None)
    doc = {"metadata": meta, "summary": result.summary, "rows": result.rows}
    return _json(doc) + "\n"


def render(result: SweepResult, fmt: Format) -> str:
    return to_csv(result) if Format(fmt) is Format.CSV else to_json(result)


def strip_volatile(doc: dict) -> dict:
    """Copy of a parsed JSON document without the run-dependent metadata keys."""
    doc = dict(doc)
    doc["metadata"] = {k: v for k, v in doc["metadata"].items() if k not in VOLATILE_KEYS}
    return doc


def emit(result: SweepResult, config: ExperimentConfig, force: bool = False) -> str:
    """Write ``result`` to ``config.output_path`` (stdout for None or ``-``); return the text.

    An existing file is only overwritten with ``force``.
    """
    text = render(result, config.format)
    path = config.output_path
    if path in (None, "-"):
        sys.stdout.write(text)
        return text
    if os.path.exists(path) and not force:
        raise FileExistsError(f"{path} exists; pass --force to overwrite")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return text


def read_csv(text: str):
    """Parse CSV produced by :func:`to_csv` back into (columns, rows)."""
    lines = text.rstrip("\n").split("\n")
    columns = lines[0].split(",")
    rows = []
    for line in lines[1:]:
        row = {}
        for c, raw in zip(columns, line.split(",")):
            if raw == "":
                row[c] = None
            elif any(ch in raw for ch in ".en"):
                row[c] = float(raw)
            else:
                row[c] = int(raw)
        rows.append(row)
    return columns, rows
