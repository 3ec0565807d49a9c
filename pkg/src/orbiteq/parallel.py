"""Order-preserving thread pool map used by the verifiers."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")

_threads: int | None = None


def set_threads(n: int | str | None) -> None:
    """Set the worker count for :func:`pmap`; ``"auto"`` uses the CPU count.

    ``ORBITEQ_THREADS`` in the environment takes precedence.
    """
    global _threads
    if n == "auto":
        n = os.cpu_count() or 1
    _threads = None if n is None else int(n)


def thread_count() -> int:
    env = os.environ.get("ORBITEQ_THREADS", "").strip()
    if env == "auto":
        return os.cpu_count() or 1
    if env.isdigit() and int(env) > 0:
        return int(env)
    if _threads is not None:
        return max(1, _threads)
    return 1


def pmap(fn: Callable[[T], R], items: Iterable[T], threads: int | None = None) -> list[R]:
    """``[fn(x) for x in items]``, possibly on several threads; result order is input order."""
    items = list(items)
    n = threads if threads is not None else thread_count()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
