"""Validation reports: violations are data, not exceptions."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ValidationReport:
    """A list of human-readable violations; empty means valid."""

    violations: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return not self.violations

    @property
    def ok(self) -> bool:
        return not self.violations

    def __len__(self) -> int:
        return len(self.violations)

    @classmethod
    def collect(cls, violations: list[str]) -> ValidationReport:
        return cls(tuple(violations))
