"""Deterministic report files: CSV or JSON lines with a config header.

Rows are written exactly in the order the caller supplies them, so a caller
that generates rows deterministically gets byte-identical files on reruns.
Every file starts with a header recording the tool version and the
invocation config, which makes a report self-describing.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Mapping, Sequence

from . import __version__

FORMATS = ("csv", "jsonl")


def render_report(
    rows: Sequence[Mapping[str, object]],
    columns: Sequence[str],
    fmt: str,
    config: Mapping[str, object],
) -> str:
    if fmt not in FORMATS:
        raise ValueError(f"unknown report format {fmt!r}, expected one of {FORMATS}")
    meta = {"tool": "traitbench", "version": __version__, "config": dict(sorted(config.items()))}
    if fmt == "csv":
        buffer = io.StringIO()
        buffer.write(f"# {json.dumps(meta, sort_keys=True)}\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([row.get(col, "") for col in columns])
        return buffer.getvalue()
    lines = [json.dumps(meta, sort_keys=True)]
    for row in rows:
        lines.append(json.dumps({col: row.get(col, "") for col in columns}, sort_keys=True))
    return "\n".join(lines) + "\n"


def write_report(
    path: str | Path,
    rows: Sequence[Mapping[str, object]],
    columns: Sequence[str],
    fmt: str,
    config: Mapping[str, object],
) -> None:
    Path(path).write_text(render_report(rows, columns, fmt, config), "utf-8")
