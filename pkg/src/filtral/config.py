"""Search budgets and caps, overridable through the ``FILTRAL_BUDGET`` environment variable.

``FILTRAL_BUDGET`` holds a JSON object whose keys are field names of
:class:`Budget`, e.g. ``{"pd_cutoff": 8, "submodule_cap": 5000}``.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields, replace


@dataclass(frozen=True)
class Budget:
    pd_cutoff: int = 12
    submodule_cap: int = 100_000
    sweep_cap: int = 1 << 20
    universe_cap: int = 20_000
    closure_samples: int = 200
    level_cap: int = 6
    seed: int = 0

    def to_dict(self) -> dict:
        return asdict(self)

    def updated(self, **kw) -> "Budget":
        known = {f.name for f in fields(self)}
        return replace(self, **{k: int(v) for k, v in kw.items() if k in known and v is not None})


def default_budget() -> Budget:
    raw = os.environ.get("FILTRAL_BUDGET")
    if not raw:
        return Budget()
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValueError(f"FILTRAL_BUDGET is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ValueError("FILTRAL_BUDGET must be a JSON object")
    return Budget().updated(**data)
