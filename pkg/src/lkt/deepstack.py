"""Run recursion-heavy operations on a thread with a large stack.

CPython 3.10 consumes C stack for every Python-to-Python call, so merely
raising sys.setrecursionlimit makes deep recursion segfault instead of
raising RecursionError. Proof terms here routinely nest thousands of
levels deep (a normal form of a cut chain at n=12 is ~8000 nodes tall),
far beyond what the default 8 MB main-thread stack can take.

The fix: a single persistent worker thread created with a 768 MB stack,
plus a matching recursion limit. `run_deep(fn)` executes fn there and
returns its result; calls already running on the worker execute inline,
so nested uses cannot deadlock the one-thread pool.
"""
from __future__ import annotations

import functools
import sys
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, TypeVar

_STACK_BYTES = 768 * 1024 * 1024
_RECURSION_LIMIT = 1_500_000

_T = TypeVar("_T")

_local = threading.local()
_pool: ThreadPoolExecutor | None = None
_pool_lock = threading.Lock()


def _init_worker() -> None:
    _local.on_deep_stack = True
    if sys.getrecursionlimit() < _RECURSION_LIMIT:
        sys.setrecursionlimit(_RECURSION_LIMIT)


def _ensure_pool() -> ThreadPoolExecutor:
    global _pool
    if _pool is None:
        with _pool_lock:
            if _pool is None:
                old = threading.stack_size(_STACK_BYTES)
                try:
                    pool = ThreadPoolExecutor(
                        max_workers=1,
                        thread_name_prefix="deepstack",
                        initializer=_init_worker,
                    )
                    # Force thread creation while the stack size is set.
                    pool.submit(lambda: None).result()
                finally:
                    threading.stack_size(old)
                _pool = pool
    return _pool


def on_deep_stack() -> bool:
    return getattr(_local, "on_deep_stack", False)


def run_deep(fn: Callable[..., _T], *args: Any, **kwargs: Any) -> _T:
    """Execute fn(*args, **kwargs) on the big-stack worker thread."""
    if on_deep_stack():
        return fn(*args, **kwargs)
    return _ensure_pool().submit(fn, *args, **kwargs).result()


def deep(fn: Callable[..., _T]) -> Callable[..., _T]:
    """Decorator: route calls through the big-stack worker."""

    @functools.wraps(fn)
    def wrapper(*args: Any, **kwargs: Any) -> _T:
        if on_deep_stack():
            return fn(*args, **kwargs)
        return _ensure_pool().submit(fn, *args, **kwargs).result()

    return wrapper
