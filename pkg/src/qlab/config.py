"""Size bounds and determinism knobs.

All exhaustive verifications are gated by explicit limits: above a limit the
operation refuses loudly instead of sampling, so a completed check is always
an exact claim.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace


def _env_max_carrier(default: int) -> int:
    raw = os.environ.get("QLAB_MAX_CARRIER")
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"QLAB_MAX_CARRIER must be an integer, got {raw!r}")
    if value <= 0:
        raise ValueError("QLAB_MAX_CARRIER must be positive")
    return value


@dataclass(frozen=True)
class Limits:
    # largest carrier a table-backed lattice may have
    max_table_carrier: int = 4096
    # largest carrier an exhaustive law check will stream
    max_exhaustive: int = field(default_factory=lambda: _env_max_carrier(1 << 16))
    # guards against compatible-ideal blow-up
    max_ideals: int = 4096
    max_completion_elements: int = 24
    # largest size accepted by the structure search
    max_search_size: int = 6
    # worker count for fanned-out element scans (results are order-independent)
    jobs: int = 1

    def with_jobs(self, jobs: int) -> "Limits":
        return replace(self, jobs=max(1, jobs))

    def with_max_exhaustive(self, bound: int) -> "Limits":
        return replace(self, max_exhaustive=bound)


DEFAULT = Limits()


def get(limits: Limits | None) -> Limits:
    return DEFAULT if limits is None else limits
