"""Machine-readable verification results."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .series import GradedSeries

MAX_DIFFS = 20


@dataclass
class QReport:
    identity: str
    cutoff: int
    matched: bool
    first_diffs: list = field(default_factory=list)
    lhs_terms: int = 0
    rhs_terms: int = 0
    millis: float = 0.0
    extra: dict | None = None

    def to_dict(self, include_millis: bool = True) -> dict:
        doc = {
            "identity": self.identity,
            "cutoff": self.cutoff,
            "matched": self.matched,
            "first_diffs": [{"e": list(e), "lhs": str(ca), "rhs": str(cb)}
                            for e, ca, cb in self.first_diffs],
            "lhs_terms": self.lhs_terms,
            "rhs_terms": self.rhs_terms,
        }
        if include_millis:
            doc["millis"] = round(self.millis, 3)
        if self.extra is not None:
            doc["extra"] = self.extra
        return doc


def compare_series(identity: str, lhs: GradedSeries, rhs: GradedSeries,
                   started: float | None = None, extra: dict | None = None) -> QReport:
    d = min(lhs.cutoff, rhs.cutoff)
    diffs = lhs.diff_up_to(rhs, d, limit=MAX_DIFFS)
    millis = 0.0 if started is None else (time.perf_counter() - started) * 1000.0
    return QReport(identity=identity, cutoff=d, matched=not diffs,
                   first_diffs=diffs, lhs_terms=len(lhs), rhs_terms=len(rhs),
                   millis=millis, extra=extra)
