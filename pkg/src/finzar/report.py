"""Small result containers used for checks that report rather than raise."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Check:
    """A boolean verdict with the witness that decided it.

    Truthiness follows ``ok`` so a ``Check`` can be used directly in ``if``.
    """

    ok: bool
    witness: Any = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class Finding:
    kind: str
    message: str
    witness: Any = None


@dataclass
class Report:
    findings: list[Finding] = field(default_factory=list)

    def add(self, kind, message, witness=None):
        self.findings.append(Finding(kind, message, witness))

    @property
    def ok(self):
        return not self.findings

    def kinds(self):
        return {f.kind for f in self.findings}

    def __len__(self):
        return len(self.findings)

    def __iter__(self):
        return iter(self.findings)

    def __bool__(self):
        # a report is truthy when clean, mirroring Check
        return self.ok
