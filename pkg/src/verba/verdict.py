"""Three-valued chirality verdicts with replayable certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

CHIRAL = "chiral"
ACHIRAL = "achiral"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class ChiralityVerdict:
    """Outcome of a chirality decision.

    ``certificate`` is plain JSON data.  For a chiral verdict it holds the
    witness word (as text), the witness element, its inverse and an argument
    tuple producing the witness; for achiral verdicts it holds the payload of
    the filter named by ``method``; for unknown ones a resource report.
    """

    status: str
    method: str
    certificate: dict[str, Any] = field(default_factory=dict)
    stats: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in (CHIRAL, ACHIRAL, UNKNOWN):
            raise ValueError(f"bad verdict status {self.status!r}")

    @property
    def is_chiral(self) -> bool:
        return self.status == CHIRAL

    @property
    def is_achiral(self) -> bool:
        return self.status == ACHIRAL

    @property
    def is_unknown(self) -> bool:
        return self.status == UNKNOWN

    def to_dict(self) -> dict[str, Any]:
        return {"verdict": self.status, "method": self.method,
                "certificate": self.certificate, "stats": self.stats}


def chiral_certificate(word, element: int, inverse: int, arguments) -> dict[str, Any]:
    return {"word": str(word), "arity": word.arity, "element": int(element),
            "inverse": int(inverse), "arguments": [int(a) for a in arguments]}
