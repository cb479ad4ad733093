"""Reading and writing coincidence-count files and reports.

Counts file, JSON::

    {"pairs": {"AB": {"n00": 10, "n01": 3, "n10": 2, "n11": 9},
               "AC": {...}, "BC": {...}},
     "meta": {...}}

Counts file, CSV, with header ``pair,o1,o2,count`` and one row per cell.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Any, Mapping

from .core import PAIRS
from .errors import QCDivideError
from .experiment import CountTable

_CELL = {"type": "integer", "minimum": 0}
_PAIR_SCHEMA = {
    "type": "object",
    "properties": {k: _CELL for k in ("n00", "n01", "n10", "n11")},
    "required": ["n00", "n01", "n10", "n11"],
    "additionalProperties": False,
}
COUNTS_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "pairs": {
            "type": "object",
            "properties": {p.value: _PAIR_SCHEMA for p in PAIRS},
            "required": [p.value for p in PAIRS],
            "additionalProperties": False,
        },
        "meta": {"type": "object"},
    },
    "required": ["pairs"],
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "command": {"enum": ["analytic", "simulate", "check", "scan"]},
        "analytic": {"type": "object"},
        "empirical": {"type": "object"},
        "consistency": {"type": "object"},
        "verdict": {"type": "object"},
        "tables": {"type": "object"},
    },
    "required": ["command"],
}


class CountsFormatError(QCDivideError):
    pass


def fmt_number(x: Any) -> str:
    """17 significant digits, enough to round-trip any double."""
    if isinstance(x, bool) or not isinstance(x, float):
        return str(x)
    return format(x, ".17g")


def _json_safe(obj: Any) -> Any:
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, Mapping):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def dumps_json(obj: Any) -> str:
    # Python's float repr is the shortest string that round-trips exactly.
    return json.dumps(_json_safe(obj), indent=2, sort_keys=False)


def counts_to_json(c: CountTable, meta: Mapping[str, Any] | None = None) -> str:
    return dumps_json({"pairs": c.to_mapping(), "meta": dict(meta or {})})


def counts_to_csv(c: CountTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["pair", "o1", "o2", "count"])
    for pair in PAIRS:
        for idx, n in enumerate(c[pair]):
            w.writerow([pair.value, idx >> 1, idx & 1, int(n)])
    return buf.getvalue()


def _as_count(v: Any, where: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        if isinstance(v, str) and v.strip().isdigit():
            return int(v)
        raise CountsFormatError(f"{where}: count {v!r} is not a nonnegative integer")
    if v < 0:
        raise CountsFormatError(f"{where}: negative count {v!r}")
    return v


def counts_from_json(text: str) -> tuple[CountTable, dict]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CountsFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or not isinstance(data.get("pairs"), dict):
        raise CountsFormatError("counts file needs a 'pairs' object")
    rows = {}
    for pair in PAIRS:
        cell = data["pairs"].get(pair.value)
        if not isinstance(cell, dict):
            raise CountsFormatError(f"pair {pair.value} missing")
        try:
            rows[pair.value] = [_as_count(cell[k], f"{pair.value}.{k}") for k in ("n00", "n01", "n10", "n11")]
        except KeyError as exc:
            raise CountsFormatError(f"pair {pair.value} lacks {exc.args[0]}") from None
    meta = data.get("meta") or {}
    return CountTable.from_mapping(rows), dict(meta)


def counts_from_csv(text: str) -> CountTable:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["pair", "o1", "o2", "count"]:
        raise CountsFormatError("CSV header must be pair,o1,o2,count")
    rows: dict[str, list[int]] = {p.value: [0, 0, 0, 0] for p in PAIRS}
    seen: dict[str, set] = {p.value: set() for p in PAIRS}
    for line_no, row in enumerate(reader, start=2):
        pair = (row["pair"] or "").strip().upper()
        if pair not in rows:
            raise CountsFormatError(f"line {line_no}: unknown pair {row['pair']!r}")
        try:
            o1, o2 = int(row["o1"]), int(row["o2"])
        except (TypeError, ValueError):
            raise CountsFormatError(f"line {line_no}: outcomes must be 0 or 1") from None
        if o1 not in (0, 1) or o2 not in (0, 1):
            raise CountsFormatError(f"line {line_no}: outcomes must be 0 or 1")
        idx = 2 * o1 + o2
        if idx in seen[pair]:
            raise CountsFormatError(f"line {line_no}: duplicate cell {pair} {o1}{o2}")
        seen[pair].add(idx)
        rows[pair][idx] = _as_count((row["count"] or "").strip(), f"line {line_no}")
    for pair, cells in seen.items():
        if not cells:
            raise CountsFormatError(f"pair {pair} missing")
    return CountTable.from_mapping(rows)


def read_counts(path: str | Path) -> tuple[CountTable, dict]:
    """Load a counts file, choosing the format from the suffix (or content)."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CountsFormatError(f"cannot read {path}: {exc.strerror}") from None
    if path.suffix.lower() == ".csv" or (path.suffix.lower() != ".json" and text.lstrip().startswith("pair")):
        return counts_from_csv(text), {}
    return counts_from_json(text)


def write_counts(path: str | Path, c: CountTable, meta: Mapping[str, Any] | None = None) -> None:
    path = Path(path)
    text = counts_to_csv(c) if path.suffix.lower() == ".csv" else counts_to_json(c, meta)
    path.write_text(text)


def rows_to_csv(rows: list[Mapping[str, Any]]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: fmt_number(v) for k, v in row.items()})
    return buf.getvalue()


def rows_to_table(rows: list[Mapping[str, Any]]) -> str:
    if not rows:
        return "(empty)\n"
    cols = list(rows[0])
    cells = [[_short(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend("  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells)
    return "\n".join(lines) + "\n"


def _short(v: Any) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)
