"""Machine-readable run reports and the experiment configuration record."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field

from . import __version__

DEFAULT_TOLERANCES = {
    "herm": 1e-8,
    "unit": 1e-8,
    "sing": 1e-12,
    "lift": 1e-6,
    "grad": 1e-10,
    "tangent": 1e-8,
}


@dataclass
class ExperimentConfig:
    """Seeded, fully explicit configuration of a verification run."""

    seed: int = 7
    n: int = 4
    p: int | float = 4
    trials: int | None = None
    tolerances: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("dimension n must be >= 2")
        if self.p != float("inf"):
            if int(self.p) < 2 or int(self.p) % 2 != 0:
                raise ValueError("p must be an even integer >= 2")
            self.p = int(self.p)
        merged = dict(DEFAULT_TOLERANCES)
        merged.update(self.tolerances)
        if any(v <= 0 for v in merged.values()):
            raise ValueError("all tolerances must be positive")
        self.tolerances = merged

    def tol(self, name: str) -> float:
        return self.tolerances[name]

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["p"] = self.p if self.p != float("inf") else "inf"
        return d


@dataclass
class CheckRecord:
    """Outcome of one named check: worst margin, violation count, sample size."""

    name: str
    worst_gap: float
    violations: int
    samples: int
    seed: int
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "worst_gap": self.worst_gap,
            "violations": self.violations,
            "samples": self.samples,
            "seed": self.seed,
            "params": self.params,
        }


@dataclass
class Report:
    """Aggregated run report; exit code 0 requires zero violations."""

    command: str
    config: dict
    records: list
    wall_time: float = 0.0
    version: str = __version__

    @property
    def total_violations(self) -> int:
        return sum(r.violations for r in self.records)

    @property
    def exit_code(self) -> int:
        return 0 if self.total_violations == 0 else 1

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "config": self.config,
            "records": [r.to_dict() for r in self.records],
            "violations": self.total_violations,
            "wall_time": self.wall_time,
            "version": self.version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, allow_nan=True)

    def to_csv(self) -> str:
        lines = ["name,worst_gap,violations,samples,seed"]
        for r in self.records:
            lines.append(f"{r.name},{r.worst_gap!r},{r.violations},{r.samples},{r.seed}")
        return "\n".join(lines) + "\n"
