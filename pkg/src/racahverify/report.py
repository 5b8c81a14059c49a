"""Structured results for identity sweeps.

Every verification pass produces one ReportEntry per checked instance:
which relation, which index tuple, whether the residual vanished, how
many terms survived, and how long the check took.  Reports merge and
sort deterministically so parallel runs print identically to serial
ones.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator


@dataclass(frozen=True)
class ReportEntry:
    relation: str
    indices: tuple[int, ...]
    passed: bool
    residual_terms: int
    ms: float
    note: str = ""

    def to_json(self) -> str:
        obj = {
            "relation": self.relation,
            "tuple": list(self.indices),
            "passed": self.passed,
            "residual_terms": self.residual_terms,
            "ms": round(self.ms, 3),
        }
        if self.note:
            obj["note"] = self.note
        return json.dumps(obj)

    def to_text(self) -> str:
        status = "  ok  " if self.passed else " FAIL "
        idx = ",".join(map(str, self.indices)) if self.indices else "-"
        tail = f"  [{self.note}]" if self.note else ""
        return (
            f"[{status}] {self.relation:<16} ({idx})"
            f"  residual_terms={self.residual_terms}  {self.ms:.1f}ms{tail}"
        )


@dataclass
class RelationReport:
    entries: list[ReportEntry] = field(default_factory=list)

    def add(self, entry: ReportEntry) -> None:
        self.entries.append(entry)

    def extend(self, entries: Iterable[ReportEntry]) -> None:
        self.entries.extend(entries)

    def merge(self, other: RelationReport) -> None:
        self.entries.extend(other.entries)

    def sorted(self) -> RelationReport:
        return RelationReport(
            sorted(self.entries, key=lambda e: (e.relation, e.indices))
        )

    def all_passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def counts(self) -> dict[str, int]:
        skipped = sum(1 for e in self.entries if e.note.startswith("skipped"))
        failed = sum(1 for e in self.entries if not e.passed)
        return {
            "checked": len(self.entries) - skipped,
            "passed": len(self.entries) - skipped - failed,
            "failed": failed,
            "skipped": skipped,
        }

    def json_lines(self) -> Iterator[str]:
        for e in self.entries:
            yield e.to_json()

    def text_lines(self) -> Iterator[str]:
        for e in self.entries:
            yield e.to_text()
