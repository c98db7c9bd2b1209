"""Three-valued verdicts shared by every certificate-producing check."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class Verdict(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"

    @property
    def exit_code(self) -> int:
        return {"holds": 0, "fails": 1, "unknown": 2}[self.value]

    @classmethod
    def combine(cls, verdicts) -> "Verdict":
        """Holds iff all hold; fails if any fails; unknown otherwise."""
        seen = set(verdicts)
        if cls.FAILS in seen:
            return cls.FAILS
        if cls.UNKNOWN in seen:
            return cls.UNKNOWN
        return cls.HOLDS


@dataclass(frozen=True)
class Check:
    """A verdict together with the witness or certificate that backs it."""

    verdict: Verdict
    witness: Any = None
    notes: tuple[str, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.verdict is Verdict.HOLDS

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS

    @property
    def fails(self) -> bool:
        return self.verdict is Verdict.FAILS


class MalformedInput(ValueError):
    """Input violates a structural precondition (exit code 3 at the CLI)."""


class ResourceLimit(RuntimeError):
    """A configured search cap was exceeded."""


class UnknownCertificate(RuntimeError):
    """A construction needed a certificate that is not available."""


class UnknownExtension(UnknownCertificate):
    """A relative extension could not be completed simplicially."""
