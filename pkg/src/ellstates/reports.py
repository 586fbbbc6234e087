"""Validation reports and the exceptions shared by every checker in the package.

A report is a list of named checks.  Each check is one axiom or property
scanned over some finite set of instances; a failing check carries witness
dictionaries with enough detail to reproduce the violation by hand.

Axiom failures are data (they go into reports).  Structural defects --
ragged tables, out-of-range indices, missing state values -- are exceptions,
because there is nothing meaningful to scan yet.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class MalformedInputError(ValueError):
    """A structural defect in an input: ragged table, bad index, missing field."""


class PreconditionError(ValueError):
    """An operation was invoked on a structure outside its stated contract."""


class InternalConsistencyError(RuntimeError):
    """A fact that must hold by theorem failed on concrete data.

    Either the input structure lied about its class or there is a bug here;
    both deserve a loud stop rather than a report entry.
    """


# Witness lists are capped so that a thoroughly broken input does not produce
# megabytes of output; the full violation count is always recorded.
MAX_WITNESSES = 8


@dataclass
class Check:
    """Outcome of one named axiom/property scan."""

    axiom: str
    passed: bool
    mode: str = "exhaustive"
    witnesses: list[dict[str, Any]] = field(default_factory=list)
    violations: int = 0
    note: str = ""
    # Classification scans (is it prelinear? cancellative?) are reported like
    # any other check but a failure there does not make the subject invalid.
    required: bool = True

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "axiom": self.axiom,
            "passed": self.passed,
            "mode": self.mode,
        }
        if not self.passed:
            out["violations"] = self.violations
            out["witnesses"] = self.witnesses
        if not self.required:
            out["required"] = False
        if self.note:
            out["note"] = self.note
        return out


def passed_check(axiom: str, mode: str = "exhaustive", note: str = "") -> Check:
    return Check(axiom=axiom, passed=True, mode=mode, note=note)


def failed_check(
    axiom: str,
    witnesses: list[dict[str, Any]],
    violations: int | None = None,
    mode: str = "exhaustive",
    note: str = "",
) -> Check:
    return Check(
        axiom=axiom,
        passed=False,
        mode=mode,
        witnesses=witnesses[:MAX_WITNESSES],
        violations=len(witnesses) if violations is None else violations,
        note=note,
    )


@dataclass
class ValidationReport:
    """A bundle of checks about one subject, plus derived classification flags."""

    subject: str
    checks: list[Check] = field(default_factory=list)
    flags: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks if c.required)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def merge(self, other: "ValidationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(
                Check(
                    axiom=prefix + c.axiom,
                    passed=c.passed,
                    mode=c.mode,
                    witnesses=c.witnesses,
                    violations=c.violations,
                    note=c.note,
                    required=c.required,
                )
            )

    def check(self, axiom: str) -> Check:
        for c in self.checks:
            if c.axiom == axiom:
                return c
        raise KeyError(axiom)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "subject": self.subject,
            "ok": self.ok,
            "checks": [c.to_json() for c in self.checks],
        }
        if self.flags:
            out["flags"] = dict(sorted(self.flags.items()))
        return out
