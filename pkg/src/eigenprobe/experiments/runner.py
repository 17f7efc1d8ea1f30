"""Deterministic parallel trial execution and CSV output.

Work items are (cell, trial) pairs; every item is a pure function of the
grid and its coordinates, so results are collected in submission order and
the output bytes do not depend on the worker count.  Floats are formatted
with ``repr`` (shortest round-trip, '.' decimal, no locale).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor


def default_workers() -> int:
    env = os.environ.get("EIGENPROBE_WORKERS")
    if env:
        return max(1, int(env))
    return 1


def run_items(fn, items, workers: int):
    """`[fn(item) for item in items]`, optionally across processes.

    ``fn`` must be a module-level function and the items picklable; results
    come back in input order regardless of scheduling.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    chunksize = max(1, len(items) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))


def format_value(v) -> str:
    if v is None:
        return "nan"
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, (int,)):
        return str(v)
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        return repr(v)
    return str(v)


def write_csv(path, columns, rows, comments=(), expected_rows=None) -> None:
    """Write rows (dicts) under a documented header; '#' lines carry the
    metadata.  ``expected_rows`` is asserted so a truncated grid never
    silently produces a short file."""
    if expected_rows is not None and len(rows) != expected_rows:
        raise ValueError(f"row count {len(rows)} != expected {expected_rows}")
    with open(path, "w", newline="\n") as f:
        for c in comments:
            f.write(f"# {c}\n")
        f.write(",".join(columns) + "\n")
        for row in rows:
            f.write(",".join(format_value(row[c]) for c in columns) + "\n")
