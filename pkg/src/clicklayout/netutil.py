"""Shared networking helpers: per-endpoint concurrency limits."""

from __future__ import annotations

import threading

_semaphores: dict[tuple[str, int], threading.BoundedSemaphore] = {}
_semaphores_lock = threading.Lock()


def endpoint_semaphore(endpoint: str, max_in_flight: int) -> threading.BoundedSemaphore:
    """Semaphore shared by all callers of one endpoint at one concurrency cap.

    Keyed on (endpoint, cap) so tests with different caps never interfere.
    """
    key = (endpoint, max_in_flight)
    with _semaphores_lock:
        sem = _semaphores.get(key)
        if sem is None:
            sem = threading.BoundedSemaphore(max_in_flight)
            _semaphores[key] = sem
        return sem
