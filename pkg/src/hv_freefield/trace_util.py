"""
Timing traces for engine computations, logged at DEBUG.

    @trace_calls
    def kernel_filtration(p, r, m, degree_bound): ...

    with trace_block("relations suite"):
        ...
"""

import functools
import logging
import time
from contextlib import contextmanager
from typing import Any, Callable, Iterator

log = logging.getLogger(__name__)

_MAX_REPR = 120


def elapsed_ms(start: float) -> float:
    """Milliseconds since a time.perf_counter() reading."""
    return (time.perf_counter() - start) * 1000


@contextmanager
def _timed(label: str) -> Iterator[None]:
    start = time.perf_counter()
    try:
        yield
    except Exception as exc:
        log.error(f"[TRACE] {label} raised {type(exc).__name__}: {exc} after {elapsed_ms(start):.2f}ms")
        raise
    log.debug(f"[TRACE] {label} done in {elapsed_ms(start):.2f}ms")


def trace_calls(func: Callable) -> Callable:
    """Log the call summary and its elapsed time."""
    qualified = f"{func.__module__}.{func.__qualname__}"

    @functools.wraps(func)
    def traced(*args, **kwargs):
        shown = [summarize(a) for a in args] + [f"{k}={summarize(v)}" for k, v in kwargs.items()]
        log.debug(f"[TRACE] {qualified}({', '.join(shown)})")
        with _timed(qualified):
            return func(*args, **kwargs)

    return traced


@contextmanager
def trace_block(description: str) -> Iterator[None]:
    log.debug(f"[TRACE] begin {description}")
    with _timed(description):
        yield


def summarize(value: Any, max_items: int = 8) -> str:
    """Short log form: engine elements by size, long collections by length."""
    from hv_freefield.fock import FockElement

    if isinstance(value, FockElement):
        return f"FockElement({value.space}, {len(value)} terms)"
    if isinstance(value, dict):
        return f"dict({len(value)} keys)"
    if isinstance(value, (list, tuple)) and len(value) > max_items:
        return f"{type(value).__name__}({len(value)} items)"
    text = repr(value)
    return text if len(text) <= _MAX_REPR else f"{text[:_MAX_REPR - 3]}..."
