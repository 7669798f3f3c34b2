"""Deterministic text output: CSV rows, JSON reports, atomic file replacement."""

import json
import os
import tempfile
from pathlib import Path
from typing import Iterable, Sequence

SCHEMA_VERSION = 1


def fmt_float(x: float) -> str:
    return f"{x:.17g}"


def fmt_cell(x) -> str:
    if isinstance(x, float):
        return fmt_float(x)
    return str(x)


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(fmt_cell(c) for c in row) for row in rows)
    return "\n".join(lines) + "\n"


def json_text(payload: dict) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **payload}, indent=2, sort_keys=True) + "\n"


def atomic_write(path, text: str) -> Path:
    """Write ``text`` to ``path`` via a temp file in the same directory and a rename."""
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    try:
        fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=directory)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as exc:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise OSError(f"cannot write {path}: {exc}") from exc
    return path
