"""Structured outcome of a property run or falsification search."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    """Result of running a check over one or many trials.

    ``worst`` is the extreme value of ``metric`` seen over all trials
    (a maximum for ratios/violations, a minimum for slacks). A failing
    report always carries a replayable ``witness``.
    """

    suite: str
    passed: bool
    trials: int = 1
    metric: str = ""
    worst: float = 0.0
    witness: dict[str, Any] | None = None
    seed: int | None = None
    elapsed: float = 0.0
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self, include_timing: bool = False) -> dict[str, Any]:
        out = {
            "suite": self.suite,
            "passed": self.passed,
            "trials": self.trials,
            "metric": self.metric,
            "worst": _jsonable(self.worst),
            "seed": self.seed,
            "witness": self.witness,
            "details": self.details,
        }
        if include_timing:
            out["elapsed"] = self.elapsed
        return out

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1


def _jsonable(x):
    # JSON has no inf/nan literals
    if isinstance(x, float) and (x != x or x in (float("inf"), float("-inf"))):
        return repr(x)
    return x
