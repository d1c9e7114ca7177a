"""CSV ingestion shared by the plotting scripts."""

from __future__ import annotations

import csv
import sys


class DatasetError(Exception):
    pass


def read_rows(path: str, required: tuple[str, ...]) -> list[dict]:
    """Rows of a delimited dataset; raises DatasetError on anything malformed."""
    try:
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None:
                raise DatasetError(f"{path}: empty file, expected a header row")
            missing = [c for c in required if c not in reader.fieldnames]
            if missing:
                raise DatasetError(f"{path}: missing columns {missing}")
            rows = list(reader)
    except OSError as exc:
        raise DatasetError(f"{path}: {exc}") from exc
    for i, row in enumerate(rows, start=2):
        if any(row.get(c) in (None, "") for c in required):
            raise DatasetError(f"{path}:{i}: short row")
        for c in required:
            if c in ("verdict", "source", "boundary_id"):
                continue
            try:
                float(row[c])
            except ValueError as exc:
                raise DatasetError(f"{path}:{i}: bad number {row[c]!r} in {c}") from exc
    return rows


def fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1
