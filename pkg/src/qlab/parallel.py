"""Deterministic fan-out for element scans.

Chunks are evaluated independently and merged by least index, so the result
never depends on worker count or completion order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor


def scan_least(n: int, fn, jobs: int = 1):
    """Return the least-index non-None value of fn(i) for i in range(n)."""
    if jobs <= 1 or n < 64:
        for i in range(n):
            w = fn(i)
            if w is not None:
                return w
        return None

    chunk = max(1, (n + jobs * 4 - 1) // (jobs * 4))
    spans = [(s, min(n, s + chunk)) for s in range(0, n, chunk)]

    def run(span):
        s, e = span
        for i in range(s, e):
            w = fn(i)
            if w is not None:
                return (i, w)
        return None

    with ThreadPoolExecutor(max_workers=jobs) as ex:
        hits = [r for r in ex.map(run, spans) if r is not None]
    if not hits:
        return None
    return min(hits)[1]
