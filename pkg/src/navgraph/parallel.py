"""Thread-count resolution and order-preserving parallel map."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

ENV_VAR = "NAVGRAPH_THREADS"


def resolve_threads(threads=None) -> int:
    """``NAVGRAPH_THREADS`` wins over the argument; ``None``/``"auto"`` means all cores."""
    env = os.environ.get(ENV_VAR)
    if env:
        threads = env
    if threads is None or threads == "auto":
        return os.cpu_count() or 1
    threads = int(threads)
    if threads < 1:
        raise ValueError("threads must be >= 1")
    return threads


def chunked(seq, size):
    return [seq[k : k + size] for k in range(0, len(seq), size)]


def pmap(fn, items, threads=None):
    """``list(map(fn, items))`` on a thread pool; output order matches input order."""
    workers = resolve_threads(threads)
    if workers == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
