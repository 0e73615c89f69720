"""Machine-readable reports emitted by the command-line tool."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .checks import Check


@dataclass
class Report:
    """Measures, bounds and checks for one command invocation.

    Floats are serialized with ``repr``, the shortest decimal string that
    parses back to the same double, so ``Report.loads(r.dumps()) == r``.
    """

    measures: dict[str, float] = field(default_factory=dict)
    bounds: dict[str, dict] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "measures": self.measures,
            "bounds": self.bounds,
            "checks": [c.to_dict() for c in self.checks],
            "metadata": self.metadata,
            "details": self.details,
        }

    @classmethod
    def from_dict(cls, d: dict) -> Report:
        return cls(
            measures=dict(d.get("measures", {})),
            bounds=dict(d.get("bounds", {})),
            checks=[Check.from_dict(c) for c in d.get("checks", [])],
            metadata=dict(d.get("metadata", {})),
            details=dict(d.get("details", {})),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False) + "\n"

    @classmethod
    def loads(cls, text: str) -> Report:
        return cls.from_dict(json.loads(text))

    def measures_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["measure", "value"])
        for name, value in self.measures.items():
            w.writerow([name, repr(float(value))])
        for key in ("r", "R"):
            if key in self.metadata:
                w.writerow([key, repr(float(self.metadata[key]))])
        return buf.getvalue()
