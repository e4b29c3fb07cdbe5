"""Report containers shared by the lemma suite and the construction pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .recurrence import INCONCLUSIVE, PROVEN, REFUTED, Verdict

EXHAUSTIVE = "EXHAUSTIVE"
SAMPLED = "SAMPLED"


@dataclass
class Check:
    """One named verification with the verdict and the oracle behind it."""

    name: str
    verdict: Verdict
    oracle: str
    mode: str = EXHAUSTIVE
    description: str = ""

    @property
    def status(self) -> str:
        return self.verdict.status

    @property
    def completed(self) -> bool:
        """PROVEN, or a sampled run that used its whole trial budget without a violation."""
        if self.status == PROVEN:
            return True
        return self.mode == SAMPLED and self.status == INCONCLUSIVE and self.verdict.budget_spent.get("violations") == 0

    def as_dict(self) -> dict[str, Any]:
        out = {
            "name": self.name,
            "description": self.description,
            "mode": self.mode,
            "oracle": self.oracle,
        }
        out.update(self.verdict.as_dict())
        return out


@dataclass
class WitnessReport:
    kind: str
    parameters: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    densities: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        statuses = {c.status for c in self.checks}
        if REFUTED in statuses:
            return REFUTED
        if not all(c.completed for c in self.checks):
            return INCONCLUSIVE
        return PROVEN

    @property
    def mode(self) -> str:
        return SAMPLED if any(c.mode == SAMPLED for c in self.checks) else EXHAUSTIVE

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "status": self.status,
            "mode": self.mode,
            "parameters": self.parameters,
            "counts": summarize(self),
            "checks": [c.as_dict() for c in self.checks],
            "densities": self.densities,
            "notes": self.notes,
        }


def summarize(report: WitnessReport) -> dict[str, int]:
    out = {PROVEN: 0, REFUTED: 0, INCONCLUSIVE: 0}
    for c in report.checks:
        out[c.status] += 1
    return out
