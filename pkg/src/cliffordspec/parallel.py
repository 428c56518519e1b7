"""Deterministic chunked parallelism.

Work is split into ordered chunks; results are assembled by chunk index,
so outputs are identical for any worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def worker_count(threads: int | None = None) -> int:
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get("CLIFFORDSPEC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return max(1, os.cpu_count() or 1)


def ordered_chunk_map(fn, chunks: list, threads: int | None = None) -> list:
    """Apply fn to each chunk, preserving chunk order in the result list."""
    workers = worker_count(threads)
    if workers == 1 or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, chunks))
