"""Ordered fan-out of per-row scans over a process pool."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")

JOBS_ENV = "TREELIKE_JOBS"


def default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        jobs = int(raw)
    except ValueError:
        raise ValueError(f"{JOBS_ENV} must be an integer, got {raw!r}") from None
    if jobs < 1:
        raise ValueError(f"{JOBS_ENV} must be >= 1")
    return jobs


def _chunks(n: int, parts: int) -> list[list[int]]:
    parts = max(1, min(parts, n))
    size, extra = divmod(n, parts)
    out, start = [], 0
    for p in range(parts):
        stop = start + size + (p < extra)
        out.append(list(range(start, stop)))
        start = stop
    return out


def map_rows(fn: Callable[..., list[T]], n: int, args: Sequence, jobs: int | None = None) -> list[T]:
    """Run ``fn(rows, *args)`` over contiguous row blocks of ``range(n)``.

    ``fn`` must return one result per row.  Results come back in row order
    whatever ``jobs`` is, so reductions over them are deterministic.
    """
    jobs = default_jobs() if jobs is None else jobs
    if jobs <= 1 or n < 2:
        return fn(list(range(n)), *args)
    # more blocks than workers: early rows carry more work
    blocks = _chunks(n, jobs * 4)
    out: list[T] = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(fn, rows, *args) for rows in blocks]
        for fut in futures:
            out.extend(fut.result())
    return out
