"""Worker-pool helper honoring the PARAFLUX_THREADS cap.

Sweeps map a pure function over an item list; results are reassembled in
input order, so output is bitwise independent of scheduling.  The default
is sequential (PARAFLUX_THREADS unset or 1).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

__all__ = ["worker_count", "map_ordered"]


def worker_count():
    raw = os.environ.get("PARAFLUX_THREADS", "")
    try:
        count = int(raw)
    except ValueError:
        return 1
    return max(1, count)


def map_ordered(fn, items):
    items = list(items)
    workers = worker_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
