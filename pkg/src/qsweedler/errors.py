"""Exception hierarchy and the law report shared by every verifier."""
from dataclasses import dataclass, field
from typing import Any


class QError(Exception):
    pass


class ValidationError(QError):
    """Malformed input: unknown labels, non-total functions, bad tables."""


class BoundaryError(ValidationError):
    """Matrices or functions whose carriers do not line up."""


class ResourceError(QError):
    """A materialized carrier or enumeration would exceed the configured cap."""


class InvariantError(QError):
    """Two routes that must agree did not. Always a bug."""


class LawViolation(ValidationError):
    def __init__(self, report):
        self.report = report
        super().__init__(str(report))


@dataclass(frozen=True)
class Failure:
    law: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        w = ", ".join(str(v) for v in self.witness)
        msg = f"{self.law} fails at ({w})"
        return f"{msg}: {self.detail}" if self.detail else msg


@dataclass
class LawReport:
    subject: str
    failures: list = field(default_factory=list)
    value: Any = None

    @property
    def ok(self):
        return not self.failures

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return f"{self.subject}: PASS"
        lines = [f"{self.subject}: FAIL"]
        lines += [f"  {f}" for f in self.failures]
        return "\n".join(lines)
