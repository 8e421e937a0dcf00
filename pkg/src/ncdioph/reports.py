"""Solver verdicts shared by the field, degree, length and width solvers."""

from __future__ import annotations

from dataclasses import dataclass, field

SAT = "SAT"
UNSAT_COMPLETE = "UNSAT_COMPLETE"
UNSAT_WITHIN_BOUNDS = "UNSAT_WITHIN_BOUNDS"
UNKNOWN = "UNKNOWN"

# statuses that still admit a solution outside the explored space
INCONCLUSIVE = (UNSAT_WITHIN_BOUNDS, UNKNOWN)


@dataclass
class SolveStats:
    patterns: int = 0
    oracle_calls: int = 0
    millis: int = 0


@dataclass
class SolveReport:
    """Outcome of a bounded solve: status, verified witnesses, search statistics.

    ``witnesses`` is a list of dicts mapping variable names to structure
    elements; when status is SAT it is nonempty and every entry re-verifies
    against the original system.
    """

    status: str
    witnesses: list = field(default_factory=list)
    stats: SolveStats = field(default_factory=SolveStats)
    note: str | None = None

    @property
    def sat(self):
        return self.status == SAT

    def witness_strings(self, render=str):
        out = []
        for w in self.witnesses:
            out.append({var: render(val) for var, val in sorted(w.items())})
        return out

    def to_json(self, render=str):
        return {
            "status": self.status,
            "witnesses": self.witness_strings(render),
            "stats": {
                "patterns": self.stats.patterns,
                "oracle_calls": self.stats.oracle_calls,
                "millis": self.stats.millis,
            },
        }

    def render_text(self, render=str):
        lines = [f"status {self.status}"]
        if self.note:
            lines.append(f"note {self.note}")
        for k, w in enumerate(self.witness_strings(render)):
            lines.append(f"witness {k}:")
            for var, val in w.items():
                lines.append(f"  {var} = {val}")
        lines.append(f"patterns={self.stats.patterns} oracle_calls={self.stats.oracle_calls}")
        return "\n".join(lines)
