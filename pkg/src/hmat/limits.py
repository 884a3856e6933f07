"""Size caps for tables and exhaustive sweeps.

``HMAT_MAX_N`` in the environment may lower any cap, never raise it.
"""

from __future__ import annotations

import os

GROUND_CAP = 24
FAMILY_SWEEP_CAP = 4
SPEC_SWEEP_CAP = 3


def cap(default: int) -> int:
    raw = os.environ.get("HMAT_MAX_N")
    if not raw:
        return default
    try:
        override = int(raw)
    except ValueError:
        return default
    return min(default, max(override, 0))
