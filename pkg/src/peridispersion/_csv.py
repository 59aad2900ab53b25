"""CSV writing shared by the table, snapshot and verification exporters."""

from __future__ import annotations

import csv
import io
import numbers
from contextlib import contextmanager
from pathlib import Path

import numpy as np


def fmt(value):
    """Serialise a number with 17 significant digits; other values verbatim."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, numbers.Integral):
        return str(value)
    try:
        return f"{float(value):.17g}"
    except (TypeError, ValueError):
        return str(value)


@contextmanager
def _open(target):
    if isinstance(target, (str, Path)):
        with open(target, "w", newline="", encoding="utf-8") as fh:
            yield fh
    else:
        yield target


def write_rows(target, header, rows):
    """Write ``header`` and ``rows`` as comma-separated, LF-terminated CSV."""
    with _open(target) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])


def to_string(header, rows):
    buf = io.StringIO()
    write_rows(buf, header, rows)
    return buf.getvalue()
