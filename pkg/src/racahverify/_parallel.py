"""Deterministic worker pool for identity sweeps.

Sweeps are embarrassingly parallel over index tuples.  The pool uses
fork start (the operators live in shared copy-on-write memory, so the
task function may be a closure over a large basis) and ``Pool.map``,
whose output order matches the input order, so reports come back in the
same deterministic sequence regardless of the worker count.  Platforms
without fork, and jobs=1, fall back to a serial loop.
"""

from __future__ import annotations

import multiprocessing
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

_WORKER_FN = None


def _init_worker(fn) -> None:
    global _WORKER_FN
    _WORKER_FN = fn


def _run_one(item):
    return _WORKER_FN(item)


def run_tasks(fn: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> list[R]:
    """Apply fn to every item, preserving order; jobs > 1 forks workers."""
    work: Sequence[T] = list(items)
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    if jobs == 1 or len(work) <= 1 or "fork" not in multiprocessing.get_all_start_methods():
        return [fn(item) for item in work]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(
        processes=min(jobs, len(work)),
        initializer=_init_worker,
        initargs=(fn,),
    ) as pool:
        return pool.map(_run_one, work, chunksize=1)
