"""Verification reports shared by the verifiers and the command line."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

VERIFIED = "verified"
REFUTED = "refuted"
UNDETERMINED = "undetermined"

EXIT_CODES = {VERIFIED: 0, REFUTED: 1, UNDETERMINED: 3}
EXIT_INVALID = 2


def from_certificate(status: str) -> str:
    """Map an equality-certificate status onto a report status."""
    return {"verified_at_depth": VERIFIED, "free_at_depth": VERIFIED, "not_free": REFUTED}.get(status, status)


@dataclass
class Check:
    name: str
    status: str
    witness: Any = None
    informational: bool = False
    exact: bool = False
    detail: str = ""

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"name": self.name, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.informational:
            d["informational"] = True
        if self.exact:
            d["exact"] = True
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class Report:
    """An ordered list of checks with an aggregate status.

    Informational checks are listed but do not affect the aggregate.
    """

    kind: str
    checks: list[Check] = field(default_factory=list)
    config: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def add(self, name: str, status: str, witness=None, **kw) -> Check:
        c = Check(name, status, witness, **kw)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.witness, c.informational, c.exact, c.detail))
        self.notes.extend(other.notes)

    @property
    def status(self) -> str:
        states = [c.status for c in self.checks if not c.informational]
        if REFUTED in states:
            return REFUTED
        if UNDETERMINED in states:
            return UNDETERMINED
        return VERIFIED

    @property
    def ok(self) -> bool:
        return self.status == VERIFIED

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status != VERIFIED and not c.informational]

    def first_failure(self) -> Check | None:
        f = self.failures()
        return f[0] if f else None

    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "status": self.status,
            "checks": [c.to_dict() for c in self.checks],
            "config": dict(sorted(self.config.items())),
        }
        if self.notes:
            d["notes"] = list(self.notes)
        return d

    def summary(self) -> str:
        lines = [f"{self.kind}: {self.status} ({len(self.checks)} checks)"]
        for c in self.checks:
            tag = " [informational]" if c.informational else ""
            wit = f"  witness={c.witness}" if c.witness is not None else ""
            lines.append(f"  {c.status:<12} {c.name}{tag}{wit}")
        return "\n".join(lines)
